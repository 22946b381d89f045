"""Python bindings for the uskolem C++ library."""

from ._core import (
    bh_constant,
    bound_report,
    configure,
    count_pairs,
    enumerate_window,
    euler_products,
    find_zeros,
    first_moment_oracle,
    in_s,
    is_degenerate,
    mean_g_check,
    moment_scan,
    representations,
    run_cli,
    second_moment_pair_count,
    term_exact,
    term_mod,
    window_params,
)

__all__ = [
    "bh_constant",
    "bound_report",
    "configure",
    "count_pairs",
    "enumerate_window",
    "euler_products",
    "find_zeros",
    "first_moment_oracle",
    "in_s",
    "is_degenerate",
    "mean_g_check",
    "moment_scan",
    "representations",
    "run_cli",
    "second_moment_pair_count",
    "term_exact",
    "term_mod",
    "window_params",
]
