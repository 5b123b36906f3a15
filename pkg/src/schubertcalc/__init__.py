"""Exact workbench for triple Schubert calculus and positivity certificates."""

__version__ = "0.1.0"

# Bump when any algebraic convention changes (composition order, root
# rendering, term order, Grothendieck descent operator): cache entries and
# reports from other convention versions must never be reused.
CONVENTION_VERSION = "conv1"

from .permutations import (  # noqa: F401,E402
    IDENTITY,
    Permutation,
    RootPair,
    all_permutations,
    bruhat_leq,
    inversion_pairs,
    longest_element,
    make_permutation,
    parse_permutation,
    simple_reflection,
    tau,
)
from .polynomials import (  # noqa: F401,E402
    LocalizedElement,
    Polynomial,
    exact_divide,
    parse,
    render,
    render_localized,
)
from .schubert import (  # noqa: F401,E402
    double_schubert,
    expansion,
    localize,
    billey,
    pipe_dream_polynomial,
    triple_coefficient,
)
from .grothendieck import (  # noqa: F401,E402
    double_grothendieck,
    expansion_K,
    ominus,
    oplus,
    triple_coefficient_K,
)
from .positivity import (  # noqa: F401,E402
    Certificate,
    CertifyOutcome,
    certify_billey,
    certify_grothendieck,
    certify_schubert,
    verify_certificate,
)
