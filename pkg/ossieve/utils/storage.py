import cloudpickle as pickle
import numpy as np
import yaml


class _RecordDumper(yaml.SafeDumper):
    pass


def _represent_float(dumper, value):
    if not np.isfinite(value):
        return dumper.represent_float(float(value))
    mantissa, _, exponent = ('%.17g' % value).partition('e')
    if '.' not in mantissa:
        mantissa += '.0'
    text = mantissa + ('e' + exponent if exponent else '')
    return dumper.represent_scalar('tag:yaml.org,2002:float', text)


_RecordDumper.add_representer(float, _represent_float)
_RecordDumper.add_representer(np.float64, _represent_float)


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def dump_record(record, filename=None):
    """
    Writes a plain-text key-value record (YAML) with floats at 17 significant digits.

    17 significant digits reproduce every IEEE double exactly, so a record reloads bit-exactly.
    """
    text = yaml.dump(_plain(record), Dumper=_RecordDumper, default_flow_style=None, sort_keys=False)
    if filename is not None:
        with open(filename, 'w', newline='\n') as file:
            file.write(text)
    return text


def load_record(filename):
    with open(filename, 'r') as file:
        return yaml.safe_load(file)


def save(results=None, config=None, filename='results.pickle'):

    save_dict = {}

    if results is not None:
        save_dict['results'] = results

    if config is not None:
        save_dict['config'] = config

    with open(filename, 'wb') as file:
        pickle.dump(save_dict, file)


def load(filename):
    with open(filename, 'rb') as file:
        save_dict = pickle.load(file)

    return save_dict
