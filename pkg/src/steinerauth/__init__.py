"""Optimal authentication codes with perfect secrecy from Steiner t-designs."""

from .authcode import (
    AuthCode,
    build_code,
    check_higher_secrecy,
    check_perfect_secrecy,
    deception_probability,
    is_optimal,
    is_tfold_secure,
    massey_schobi_bound,
    posterior,
    security_report,
)
from .designs import (
    Design,
    DesignError,
    divisibility_check,
    emit,
    ingest,
    orbit_design,
    pg_lines,
    spherical_design,
    sts_cyclic,
    verify_design,
    witt_search,
)
from .ordering import EncodingMatrix, order_blocks, validate_ordering

__version__ = "0.1.0"
