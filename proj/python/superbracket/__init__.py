"""Exact brackets of graded-commutative polynomials.

    >>> import superbracket as sb
    >>> t = sb.cotangent(sb.base([("x1", "even"), ("xi1", "odd")]))
    >>> str(sb.poisson(sb.Poly(t, "p_x1"), sb.Poly(t, "x1^2")))
    '2*x1'
"""

import json

from ._core import (  # noqa: F401
    Chart,
    Error,
    Poly,
    alpha,
    alpha_explicit,
    anticotangent,
    antitangent,
    base,
    classify_shift,
    cli,
    cotangent,
    d_form,
    decompose,
    forms_chart,
    higher_koszul,
    higher_schouten,
    is_master,
    lichnerowicz,
    load_chart,
    manifest,
    mx,
    poisson,
    schouten,
    shift,
    vector_bundle,
    with_parameter,
)


def run_suite(filter=(), seed=1, jobs=1):
    """Run conformance cases (all when `filter` is empty); returns the report as a dict."""
    return json.loads(_core._suite_json(list(filter), seed, jobs))


from . import _core  # noqa: E402
