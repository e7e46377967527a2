"""Hot-loop kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it imports; set ``NOETHER_PURE_PYTHON=1``
to force the fallback.  Both backends expose the same names.
"""

import os

_names = (
    "FieldOps",
    "poly_add",
    "poly_sub",
    "poly_neg",
    "poly_scale",
    "poly_mul",
    "poly_map_monomial",
    "table_is_latin",
    "table_is_associative",
)

from . import _pykernels as pure  # noqa: E402

compiled = None
if not os.environ.get("NOETHER_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled = None

_active = compiled if compiled is not None else pure
BACKEND = _active.BACKEND

FieldOps = _active.FieldOps
poly_add = _active.poly_add
poly_sub = _active.poly_sub
poly_neg = _active.poly_neg
poly_scale = _active.poly_scale
poly_mul = _active.poly_mul
poly_map_monomial = _active.poly_map_monomial
table_is_latin = _active.table_is_latin
table_is_associative = _active.table_is_associative

__all__ = list(_names) + ["BACKEND", "pure", "compiled"]
