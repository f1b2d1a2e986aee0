"""Exact optimal quantizers of the product Cantor measure.

Thin wrapper over the C++ core: rationals come back as ``fractions.Fraction``.
"""

from fractions import Fraction

from . import _core
from ._core import DomainError, EmptyRegionError, ParseError, ResolutionError

__all__ = [
    "DomainError",
    "EmptyRegionError",
    "ParseError",
    "ResolutionError",
    "F_inverse",
    "F_map",
    "cantor_point",
    "centroid",
    "count_variants",
    "exact_distortion",
    "level",
    "lloyd_step",
    "multistart_search",
    "optimal_codebook",
    "quantization_error",
    "region_distortion",
    "variant_spec",
]


def _points_in(points):
    return [(str(Fraction(x)), str(Fraction(y))) for x, y in points]


def _points_out(points):
    return [(Fraction(x), Fraction(y)) for x, y in points]


def _interval(d):
    if d is None:
        return None
    return {"lower": Fraction(d["lower"]), "upper": Fraction(d["upper"]),
            "exact": d["exact"], "depth": d["depth"]}


def quantization_error(n):
    return Fraction(_core.quantization_error(n))


def level(n):
    return _core.level(n)


def count_variants(n):
    return int(_core.count_variants(n))


def optimal_codebook(n, variant=0):
    return _points_out(_core.optimal_codebook(n, str(variant)))


def variant_spec(n, variant=0):
    return _core.variant_spec(n, str(variant))


def exact_distortion(points, tolerance=Fraction(1, 10**12), max_depth=40):
    return _interval(_core.exact_distortion(_points_in(points), str(Fraction(tolerance)), max_depth))


def lloyd_step(points, depth):
    return _points_out(_core.lloyd_step(_points_in(points), depth))


def multistart_search(n, seeds, rng_seed=1, depth=20):
    r = _core.multistart_search(n, seeds, rng_seed, depth)
    best = r["best"]
    return {"completed": r["completed"], "aborted": r["aborted"],
            "best": None if best is None else _points_out(best),
            "distortion": _interval(r["distortion"])}


def cantor_point(word):
    return Fraction(_core.cantor_point(word))


def F_map(word, infinite=False):
    return _core.F_map(word, infinite)


def F_inverse(word):
    return _core.F_inverse(word)


def centroid(address):
    x, y = _core.centroid(address)
    return Fraction(x), Fraction(y)


def region_distortion(address, center):
    return Fraction(_core.region_distortion(address, (str(Fraction(center[0])), str(Fraction(center[1])))))
