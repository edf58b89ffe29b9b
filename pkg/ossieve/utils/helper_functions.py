import numpy as np

from ossieve.utils.exceptions import DataError


def bracketed_newton(fun, dfun, target, lower, upper, x0=None, xtol=1e-12, ftol=0.0, max_iterations=200):
    r"""
    Solves :math:`f(x) = y` elementwise for a nondecreasing :math:`f` on a finite bracket.

    Each iteration shrinks the bracket around the root and takes a Newton step from the current
    point; steps that leave the bracket (or meet a vanishing slope) are replaced by bisection.

    :param fun: Vectorised nondecreasing function.
    :param dfun: Its derivative.
    :param target: Right-hand side :math:`y`, any shape.
    :param lower: Lower end of the bracket, broadcast against ``target``.
    :param upper: Upper end of the bracket, broadcast against ``target``.
    :param x0: Optional starting point inside the bracket.
    :param xtol: Stop once the bracket or the step is narrower than this.
    :param ftol: Stop once the residual is at most this.
    :param max_iterations: Iteration cap.
    :return: Array of roots with the shape of ``target``.
    """
    target = np.asarray(target, dtype=np.float64)
    lo = np.array(np.broadcast_to(np.asarray(lower, dtype=np.float64), target.shape))
    hi = np.array(np.broadcast_to(np.asarray(upper, dtype=np.float64), target.shape))
    if x0 is None:
        x = 0.5 * (lo + hi)
    else:
        x = np.clip(np.broadcast_to(np.asarray(x0, dtype=np.float64), target.shape), lo, hi)

    active = np.ones(target.shape, dtype=bool)
    for _ in range(max_iterations):
        resid = fun(x) - target
        solved = np.abs(resid) <= ftol
        below = resid < 0
        lo = np.where(active & below, x, lo)
        hi = np.where(active & ~below & ~solved, x, hi)

        with np.errstate(divide='ignore', invalid='ignore'):
            step = x - resid / dfun(x)
        newton_ok = np.isfinite(step) & (step > lo) & (step < hi)
        x_new = np.where(newton_ok, step, 0.5 * (lo + hi))

        done = solved | (hi - lo <= xtol) | (np.abs(x_new - x) <= xtol)
        x = np.where(active & ~solved, x_new, x)
        active &= ~done
        if not active.any():
            break

    return x


def seed_stream(seed, *keys):
    """
    Independent random generator for stream ``keys`` under master ``seed``.

    Streams are counter-based (Philox) and keyed through :class:`numpy.random.SeedSequence`, so two
    different key tuples never share draws and any single stream can be regenerated in isolation.
    """
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(sequence))


def derived_seed(seed, index):
    """Integer seed of sub-run ``index`` of master ``seed``."""
    return int(np.random.SeedSequence(int(seed), spawn_key=(int(index),)).generate_state(1)[0])


def open_uniforms(rng, shape):
    """Uniform draws strictly inside (0, 1): midpoints of the 2**-52 lattice, all exactly representable."""
    return (rng.integers(0, 2 ** 52, size=shape).astype(np.float64) + 0.5) * 2.0 ** -52


def write_table(filename, header, values):
    """Writes a numeric table as CSV with 17 significant digits and a single header line."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    np.savetxt(filename, values, fmt='%.17g', delimiter=',', header=','.join(header), comments='',
               newline='\n')


def read_table(filename, header=None):
    """
    Reads a CSV written by :func:`write_table`.

    :param filename: Path of the CSV file.
    :param header: Expected column names. A mismatch is a :class:`DataError`.
    :return: (column names, 2-d array of values)
    """
    try:
        with open(filename, 'r') as file:
            names = file.readline().strip().split(',')
        values = np.loadtxt(filename, delimiter=',', skiprows=1, ndmin=2)
    except (OSError, ValueError) as e:
        raise DataError('Unable to read {}: {}'.format(filename, e))

    if header is not None and names != list(header):
        raise DataError('Expected columns {} in {}, found {}'.format(','.join(header), filename, ','.join(names)))
    if values.size and values.shape[1] != len(names):
        raise DataError('Row width does not match the header in {}'.format(filename))
    if not np.all(np.isfinite(values)):
        raise DataError('Non-finite values in {}'.format(filename))

    return names, values
