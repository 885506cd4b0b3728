"""Exception hierarchy.

``ConsistencyError`` is special: it signals that an identity which should hold
for every input was observed to fail, and it carries a witness record.
"""


class WeylStrataError(Exception):
    pass


class ConfigError(WeylStrataError):
    pass


class NotFiniteType(ConfigError):
    pass


class RankCapExceeded(ConfigError):
    pass


class GroupMismatch(WeylStrataError):
    pass


class AutMismatch(WeylStrataError):
    pass


class InvalidIndex(WeylStrataError):
    pass


class IndexMismatch(WeylStrataError):
    pass


class RepNotMinimal(WeylStrataError):
    pass


class NotDistinguished(WeylStrataError):
    pass


class DomainMismatch(WeylStrataError):
    pass


class NoNormalization(WeylStrataError):
    pass


class KNotDeltaStable(WeylStrataError):
    pass


class PreconditionFailure(WeylStrataError):
    pass


class NotAPoset(WeylStrataError):
    pass


class ConsistencyError(WeylStrataError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = dict(witness or {})


class BijectionFailure(ConsistencyError):
    pass
