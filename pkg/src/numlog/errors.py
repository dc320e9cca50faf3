"""Exception types raised by numlog."""


class NumlogError(Exception):
    """Base class for all numlog errors."""


class CodecError(NumlogError, ValueError):
    pass


class ElasticOverflow(CodecError):
    """Value does not fit in 63 payload bits."""


class Truncated(CodecError):
    """Byte stream ended before a stop bit."""


class Overlong(CodecError):
    """More than 9 bytes without a stop bit."""


class EmptyInput(CodecError):
    pass


class OutOfRange(NumlogError, ValueError):
    pass


class UnknownUppercaseTag(NumlogError, KeyError):
    pass


class RegistryError(NumlogError, ValueError):
    """Malformed pattern registry file or rule."""


class CorruptContainer(NumlogError):
    """Container bytes violate a format invariant."""


class BadMagic(CorruptContainer):
    pass


class QueueUnderflow(CorruptContainer):
    """A skeleton tag has no value left in its tag group."""


class IdOutOfRange(CorruptContainer):
    pass


class FingerprintMismatch(NumlogError):
    """Container was written with a different pattern registry."""


class BackendUnavailable(NumlogError):
    pass
