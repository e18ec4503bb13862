"""Exception hierarchy.  Every error carries a short machine-readable ``code``."""


class FullGroupError(Exception):
    code = "error"

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceCapExceeded(FullGroupError):
    code = "resource_cap"


class NotBijective(FullGroupError):
    code = "not_bijective"


class NotClosed(FullGroupError):
    code = "not_closed"


class InfiniteOrder(FullGroupError):
    code = "infinite_order"


class WordTooShort(FullGroupError):
    code = "word_too_short"


class UnsupportedSystem(FullGroupError):
    code = "unsupported_system"


class IrrationalFrequency(FullGroupError):
    code = "irrational_frequency"


class NonIntegerIndex(FullGroupError):
    code = "non_integer_index"


class NonzeroIndex(FullGroupError):
    code = "nonzero_index"


class NeighborhoodSearchExhausted(FullGroupError):
    code = "neighborhood_search_exhausted"


class ReturnTimeCapExceeded(FullGroupError):
    code = "return_time_cap"


class DisjointnessViolated(FullGroupError):
    code = "disjointness_violated"


class RecodingRequired(FullGroupError):
    code = "recoding_required"


class Inconclusive(FullGroupError):
    code = "inconclusive"


class ParseError(FullGroupError):
    code = "parse_error"

    def __init__(self, message: str, position: int = 0, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class ConfigError(FullGroupError):
    code = "config_error"
