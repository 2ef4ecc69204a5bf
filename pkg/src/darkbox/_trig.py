"""sin(pi x) and cos(pi x) that are exact at integer and half-integer x."""

import numpy as np


def sinpi(x):
    r = np.remainder(np.asarray(x, dtype=float), 2.0)
    out = np.sin(np.pi * r)
    out = np.where((r == 0.0) | (r == 1.0), 0.0, out)
    out = np.where(r == 0.5, 1.0, out)
    out = np.where(r == 1.5, -1.0, out)
    return out if out.ndim else float(out)


def cospi(x):
    r = np.remainder(np.asarray(x, dtype=float), 2.0)
    out = np.cos(np.pi * r)
    out = np.where((r == 0.5) | (r == 1.5), 0.0, out)
    out = np.where(r == 0.0, 1.0, out)
    out = np.where(r == 1.0, -1.0, out)
    return out if out.ndim else float(out)
