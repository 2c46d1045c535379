"""Exception types raised by fitgraph operations."""


class FitgraphError(Exception):
    """Base class for all fitgraph errors."""


class LengthMismatchError(FitgraphError, ValueError):
    """Sequences of inconsistent length, or allele list length != locus count."""


class UnknownAlleleError(FitgraphError, ValueError):
    def __init__(self, locus: int, symbol: str):
        self.locus = locus
        self.symbol = symbol
        super().__init__(f"allele {symbol!r} not in the alphabet of locus {locus}")


class CodeOutOfRangeError(FitgraphError, ValueError):
    """Genotype code outside [0, total_size)."""


class SpaceTooLargeError(FitgraphError, ValueError):
    """Product of alphabet sizes exceeds the 63-bit code range."""


class MonomorphicLocusError(FitgraphError, ValueError):
    """Alphabet inference found a locus with fewer than 2 distinct symbols."""


class EmptyInputError(FitgraphError, ValueError):
    """No variant records supplied."""


class ConflictingDuplicateError(FitgraphError, ValueError):
    def __init__(self, sequence: str, f1: float, f2: float):
        self.sequence = sequence
        self.f1 = f1
        self.f2 = f2
        super().__init__(
            f"sequence {sequence!r} appears with conflicting fitness values {f1} and {f2}"
        )


class NonFiniteFitnessError(FitgraphError, ValueError):
    """A fitness value is NaN or infinite."""


class StartNotFoundError(FitgraphError, KeyError):
    """Walk start genotype not present in the landscape."""


class NotAnOptimumError(FitgraphError, ValueError):
    """Basin requested for a node that is not a sink."""


class FocalNotFoundError(FitgraphError, KeyError):
    """Mutagenesis focal genotype not present in the landscape."""


class SingleLocusError(FitgraphError, ValueError):
    """Pairwise statistics need at least two loci."""


class NoCompleteSquaresError(FitgraphError, ValueError):
    """No background has all four corners of any mutational square observed."""


class NoNeighborsError(FitgraphError, ValueError):
    """No node in the landscape has any observed neighbor."""


class DegenerateFitError(FitgraphError, ValueError):
    """Regression design is rank-deficient; coefficients are not identifiable."""


class InvalidKError(FitgraphError, ValueError):
    """NK interaction order k outside [0, n-1] or non-binary loci requested."""


class MissingColumnError(FitgraphError, ValueError):
    """CSV input lacks a required column."""


class RaggedRowError(FitgraphError, ValueError):
    def __init__(self, line: int, detail: str = ""):
        self.line = line
        super().__init__(f"row at line {line} is inconsistent with the header/first row{': ' + detail if detail else ''}")


class NonNumericFitnessError(FitgraphError, ValueError):
    def __init__(self, line: int, value: str):
        self.line = line
        self.value = value
        super().__init__(f"fitness value {value!r} at line {line} is not a number")


class SnapshotFormatError(FitgraphError, ValueError):
    """Binary snapshot is corrupt or has an unsupported version."""
