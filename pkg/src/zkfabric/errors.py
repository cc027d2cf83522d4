"""Exception types shared across the package."""


class ZkFabricError(Exception):
    """Base class for every error raised by this package."""


# statement parsing / minimization

class UnknownOperator(ZkFabricError):
    def __init__(self, word: str):
        super().__init__(f"unknown operator marker [{word}]")
        self.word = word


class TooManyVariables(ZkFabricError):
    def __init__(self, n: int):
        super().__init__(f"{n} clauses, at most 6 supported")
        self.n = n


class EmptyClause(ZkFabricError):
    pass


class VarIndexOutOfRange(ZkFabricError):
    pass


# circuits

class DepthZero(ZkFabricError):
    pass


class ArityMismatch(ZkFabricError):
    pass


# garbling

class DecryptFailure(ZkFabricError):
    pass


class UnknownLabel(ZkFabricError):
    pass


# oblivious transfer

class InvalidGroupElement(ZkFabricError):
    pass


class ConsistencyCheckFailed(ZkFabricError):
    pass


# repository

class DigestMismatch(ZkFabricError):
    pass


class StaleSequence(ZkFabricError):
    pass


class MalformedRecord(ZkFabricError):
    pass


# protocol

class CommitMismatch(ZkFabricError):
    pass


class PartitionOutputInvalid(ZkFabricError):
    pass


class VerdictMismatch(ZkFabricError):
    pass
