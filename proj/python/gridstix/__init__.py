"""Grid-STIX: STIX 2.1 extension toolkit for electrical-grid cybersecurity.

Thin Python surface over the C++ core: bundle parsing and canonical
serialization, the Grid-STIX schema registry, multi-stage validation,
threat-graph analytics, Zero Trust policy evaluation, privacy-preserving
redaction, and schema/visualization export.
"""

try:
    from ._gridstix import *  # noqa: F401,F403
    from ._gridstix import __version__  # noqa: F401
except ImportError:  # in-tree builds place the extension beside the package
    from _gridstix import *  # noqa: F401,F403
    from _gridstix import __version__  # noqa: F401
