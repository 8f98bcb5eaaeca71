"""Exception hierarchy shared by every layer of the package.

Each exception carries a short machine-readable ``code`` so the CLI and the
reports can surface a stable identifier instead of a message string.
"""


class VdasError(Exception):
    code = "error"


class SearchExhausted(VdasError):
    code = "search-exhausted"


class HashToPointError(VdasError):
    code = "internal-error"


class EmptyBatchError(VdasError):
    code = "empty-batch"


class ShapeError(VdasError):
    code = "shape"


class NonInvertibleError(VdasError):
    code = "non-invertible"


class ConfigError(VdasError):
    code = "config"


class EmptyInputError(VdasError):
    code = "empty-input"


class DecodeError(VdasError):
    code = "decode"


class BadTagError(DecodeError):
    code = "bad-tag"


class LengthError(DecodeError):
    code = "wrong-length"


class OffCurveError(DecodeError):
    code = "off-curve"


class WrongOrderError(DecodeError):
    code = "wrong-order"


class IdentityPointError(DecodeError):
    code = "identity-point"


class ParamsetMismatch(DecodeError):
    code = "paramset-mismatch"
