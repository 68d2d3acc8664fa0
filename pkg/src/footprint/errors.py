"""Exception hierarchy.  Every error carries a machine-readable ``code``."""


class FootprintError(Exception):
    code = "error"


class NonPrimeCharacteristic(FootprintError, ValueError):
    code = "non_prime_characteristic"


class ReducibleModulus(FootprintError, ValueError):
    code = "reducible_modulus"


class UnsupportedDegree(FootprintError, ValueError):
    code = "unsupported_degree"


class DivisionByZero(FootprintError, ZeroDivisionError):
    code = "division_by_zero"


class SpecMismatch(FootprintError, ValueError):
    code = "spec_mismatch"


class InfiniteField(FootprintError, ValueError):
    code = "infinite_field"


class DimensionMismatch(FootprintError, ValueError):
    code = "dimension_mismatch"


class EmptyInput(FootprintError, ValueError):
    code = "empty_input"


class MonomialOutsideBox(FootprintError, ValueError):
    code = "monomial_outside_box"


class ChainLeavesBox(FootprintError, ValueError):
    code = "chain_leaves_box"


class NotConsecutive(FootprintError, ValueError):
    code = "not_consecutive"


class ZeroPolynomial(FootprintError, ValueError):
    code = "zero_polynomial"


class ZeroGenerator(FootprintError, ValueError):
    code = "zero_generator"


class DuplicateLeadingMonomial(FootprintError, ValueError):
    code = "duplicate_leading_monomial"


class DuplicatePoints(FootprintError, ValueError):
    code = "duplicate_points"


class InfeasibleDegrees(FootprintError, ValueError):
    code = "infeasible_degrees"


class DegreeOutOfRange(FootprintError, ValueError):
    code = "degree_out_of_range"


class NotDivisorClosed(FootprintError, ValueError):
    code = "not_divisor_closed"


class IndexOutOfRange(FootprintError, IndexError):
    code = "index_out_of_range"


class LengthMismatch(FootprintError, ValueError):
    code = "length_mismatch"


class ZeroVector(FootprintError, ValueError):
    code = "zero_vector"


class ZeroSubspace(FootprintError, ValueError):
    code = "zero_subspace"


class NotNested(FootprintError, ValueError):
    code = "not_nested"


class KOutOfRange(FootprintError, ValueError):
    code = "k_out_of_range"


class SearchBudgetExceeded(FootprintError, RuntimeError):
    code = "search_budget_exceeded"


class CardinalityTooLarge(FootprintError, ValueError):
    code = "cardinality_too_large"


class NotABasis(FootprintError, ValueError):
    code = "not_a_basis"


class ParseError(FootprintError, ValueError):
    code = "parse_error"


class GuaranteeUnmetAndConstructionFailed(FootprintError, RuntimeError):
    """Raised when fewer than k polynomials could be built.

    ``achieved`` is the number that could be built and ``polynomials`` holds them.
    """

    code = "guarantee_unmet_and_construction_failed"

    def __init__(self, message, achieved, polynomials=()):
        super().__init__(message)
        self.achieved = achieved
        self.polynomials = list(polynomials)


class InvariantViolation(FootprintError, AssertionError):
    code = "invariant_violation"
