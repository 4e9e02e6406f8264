"""Exception hierarchy shared by the library and the command line."""


class CsaDimError(Exception):
    """Base class for every error raised by csadim."""


class RangeError(CsaDimError, ValueError):
    """An index (n, a dimension, a block size) lies outside the valid range."""


class ParityError(CsaDimError, ValueError):
    """An even integer was required."""


class ResourceLimitError(CsaDimError):
    """A configured cap (memory or oracle size) would be exceeded."""


class CacheFormatError(CsaDimError):
    """A table cache file is malformed and was not loaded."""


class ChecksumError(CacheFormatError):
    pass


class VersionError(CacheFormatError):
    pass
