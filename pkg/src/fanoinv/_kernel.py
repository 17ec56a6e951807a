"""Select the compiled graph-sum kernel when built, else the Python one."""

from __future__ import annotations

import os

from ._kernel_py import Tables

BACKEND = "python"

if os.environ.get("FANOINV_PURE_PYTHON") != "1":
    try:
        from ._ckernel import graph_term, sum_graphs

        BACKEND = "cython"
    except ImportError:
        from ._kernel_py import graph_term, sum_graphs
else:
    from ._kernel_py import graph_term, sum_graphs

__all__ = ["BACKEND", "Tables", "graph_term", "sum_graphs"]
