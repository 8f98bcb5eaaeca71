"""Certificateless aggregate signatures for IoT data aggregation.

The arithmetic is variable-time and intended for research and benchmarking,
not for protecting real secrets.
"""
from .core import (
    AggregateSignature,
    Identity,
    IndividualSignature,
    MasterKey,
    RegistrationRecord,
    StateInfo,
    SystemParams,
    TerminalKeys,
    aggregate,
    aggregate_verify,
    extract_partial_key,
    register,
    setup,
    sign,
    user_keygen,
    verify_individual,
)

__version__ = "0.1.0"
