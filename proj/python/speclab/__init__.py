"""Dirichlet eigenvalues of weighted divergence operators on charts, with
checks of universal eigenvalue inequalities."""

from ._speclab import (
    BoundReport,
    SpeclabError,
    WeylFit,
    check_catalog,
    cheng_yang_type,
    corollary_trio,
    interval_spectrum,
    intro_comparators,
    lemma_c_bound,
    list_catalog,
    polya_type,
    rectangle_spectrum,
    recursion_constant,
    recursion_lemma,
    run,
    weyl_fit,
    yang_form,
)

__all__ = [
    "BoundReport",
    "SpeclabError",
    "WeylFit",
    "check_catalog",
    "cheng_yang_type",
    "corollary_trio",
    "interval_spectrum",
    "intro_comparators",
    "lemma_c_bound",
    "list_catalog",
    "polya_type",
    "rectangle_spectrum",
    "recursion_constant",
    "recursion_lemma",
    "run",
    "weyl_fit",
    "yang_form",
]
