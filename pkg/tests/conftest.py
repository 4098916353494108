import pytest

from phaseops.families import make_family

FAMILY_PARAMS = [
    ("legendre", {}),
    ("chebyshev-t", {}),
    ("chebyshev-u", {}),
    ("gegenbauer", {"lam": -0.25}),
    ("gegenbauer", {"lam": 0.25}),
    ("gegenbauer", {"lam": 2.0}),
    ("jacobi", {"mu": -0.5, "nu": 0.5}),
    ("jacobi", {"mu": 0.25, "nu": 0.5}),
]


def family_id(param):
    kind, kw = param
    return kind + "".join(f"-{k}{v:g}" for k, v in kw.items())


@pytest.fixture(params=FAMILY_PARAMS, ids=[family_id(p) for p in FAMILY_PARAMS])
def spec(request):
    kind, kw = request.param
    return make_family(kind, **kw)
