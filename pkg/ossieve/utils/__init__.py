from .storage import save, load, dump_record, load_record
from .logging import logger, init_logging
from .helper_functions import bracketed_newton, derived_seed, open_uniforms, read_table, seed_stream, write_table
