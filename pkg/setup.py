from setuptools import setup
import os

dir_setup = os.path.dirname(os.path.realpath(__file__))

with open(os.path.join(dir_setup, 'ossieve', 'release.py')) as f:
    exec(f.read())

with open(os.path.join(dir_setup, 'requirements.txt')) as f:
    requirements = f.read().splitlines()

with open(os.path.join(dir_setup, 'requirements_dev.txt')) as f:
    requirements_dev = f.read().splitlines()

long_description = '''ossieve estimates the latent and measurement-error distributions of a repeated-measurement
model from two observed order statistics, with a simulated sieve extremum estimator.'''

modules = ['ossieve.orderstat',
           'ossieve.sieve',
           'ossieve.estimator',
           'ossieve.diagnostics',
           'ossieve.utils']

tests = []

setup(name="ossieve",
      version=__version__,
      description="Sieve estimation of repeated measurements from two order statistics.",
      long_description=long_description,
      platforms=["any"],
      python_requires='>=3.8',
      license="MIT",
      py_modules=['ossieve'],
      packages=['ossieve'] + modules + tests,
      entry_points={
          'console_scripts': [
              'ossieve = ossieve.__main__:main'
          ]
      },
      install_requires=requirements,
      extras_require={'dev': requirements_dev},
      include_package_data=True,
      classifiers=[
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Mathematics'
      ]
      )
