"""Exact engine for (a,b)-town mod k families."""

import json

from ._towns import (
    BudgetError,
    Family,
    ParseError,
    SpecError,
    augment,
    best_lower_bound,
    block_construction,
    co_star,
    extremal_search,
    frankl_odlyzko,
    naive_extremal,
    probe_conjectures,
    star,
    table_markdown,
)
from . import _towns


def bound_oracle(a, b, k, n):
    """Best proven upper bound with the list of rules that fired."""
    return json.loads(_towns._bound_oracle_json(a, b, k, n))


def certify(family, p):
    """Independence certificate when p does not divide a-b, isotropy otherwise."""
    return json.loads(_towns._certify_json(family, p))


def table(k, n):
    return json.loads(_towns._table_json(k, n))


__all__ = [
    "BudgetError",
    "Family",
    "ParseError",
    "SpecError",
    "augment",
    "best_lower_bound",
    "block_construction",
    "bound_oracle",
    "certify",
    "co_star",
    "extremal_search",
    "frankl_odlyzko",
    "naive_extremal",
    "probe_conjectures",
    "star",
    "table",
    "table_markdown",
]
