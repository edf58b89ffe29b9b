# Configuration file for the Sphinx documentation builder.
import os
import sys

sys.path.insert(0, os.path.abspath('.'))
sys.path.insert(0, os.path.abspath('../..'))

import ossieve

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.intersphinx',
              'sphinx.ext.mathjax',
              'sphinx.ext.viewcode']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'ossieve'
author = 'ossieve developers'
version = ossieve.__version__
release = version

exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = False

html_theme = 'classic'
htmlhelp_basename = 'ossievedoc'

latex_documents = [
    (master_doc, 'ossieve.tex', 'ossieve Documentation', author, 'manual'),
]
man_pages = [
    (master_doc, 'ossieve', 'ossieve Documentation', [author], 1)
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None),
                       'numpy': ('https://numpy.org/doc/stable/', None),
                       'scipy': ('https://docs.scipy.org/doc/scipy/', None)}
