"""Coverage statistics of random ball systems on metric graphs."""

try:
    # installed wheel: the extension lives inside the package
    from . import _nervecover as _impl
except ImportError:
    # build tree: the extension sits next to the package on the path
    import _nervecover as _impl

__version__ = _impl.__version__

azuma_bound = _impl.azuma_bound
builtin_graphs = _impl.builtin_graphs
chi_coefficients = _impl.chi_coefficients
chi_distribution_exact = _impl.chi_distribution_exact
coverage_exact = _impl.coverage_exact
family = _impl.family
family_size = _impl.family_size
gap_moments = _impl.gap_moments
mc_coverage = _impl.mc_coverage
stevens_coverage = _impl.stevens_coverage
stevens_gap_vector = _impl.stevens_gap_vector
three_arc_containment = _impl.three_arc_containment

__all__ = [
    "__version__",
    "azuma_bound",
    "builtin_graphs",
    "chi_coefficients",
    "chi_distribution_exact",
    "coverage_exact",
    "family",
    "family_size",
    "gap_moments",
    "mc_coverage",
    "stevens_coverage",
    "stevens_gap_vector",
    "three_arc_containment",
]
