"""Exception hierarchy.

Every library error carries an ``exit_code`` used by the command line
front end: 2 parse/validation, 3 divergent or unbounded region,
4 quadrature failure, 5 suite failure.
"""


__all__ = [
    "MorseError", "ParseError", "NonHermitian", "NegativeWeight", "DimensionMismatch",
    "DegenerateLevi", "DegenerateCurvature", "DegenerateEigenvalue", "DivergentBoundaryTerm",
    "UnboundedJSet", "ConvexityViolation", "NotConformal", "NotSemipositive",
    "QuadratureNonConvergence", "SuiteFailure",
]


class MorseError(Exception):
    exit_code = 1
    code = "MORSE_ERROR"


class ParseError(MorseError):
    exit_code = 2
    code = "PARSE_ERROR"

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class NonHermitian(ParseError):
    code = "NON_HERMITIAN"

    def __init__(self, i, j, message=None, field=None):
        self.i, self.j = i, j
        super().__init__(message or f"entry ({i}, {j}) is not the conjugate of ({j}, {i})",
                         field=field)


class NegativeWeight(ParseError):
    code = "NEGATIVE_WEIGHT"

    def __init__(self, index, weight=None, field=None):
        self.index = index
        super().__init__(f"sample {index} has negative weight {weight!r}", field=field)


class DimensionMismatch(ParseError):
    code = "DIMENSION_MISMATCH"

    def __init__(self, message, field=None):
        super().__init__(message, field=field)


class DegenerateLevi(MorseError):
    exit_code = 3
    code = "DEGENERATE_LEVI"


class DegenerateCurvature(MorseError):
    exit_code = 3
    code = "DEGENERATE_CURVATURE"


class DegenerateEigenvalue(MorseError):
    exit_code = 2
    code = "DEGENERATE_EIGENVALUE"


class DivergentBoundaryTerm(MorseError):
    """The index region at a boundary point is unbounded.

    ``sample`` is the offending boundary sample index when known.
    """

    exit_code = 3
    code = "DIVERGENT_BOUNDARY_TERM"

    def __init__(self, message, sample=None, grade=None):
        self.sample = sample
        self.grade = grade
        super().__init__(message)


class UnboundedJSet(MorseError):
    exit_code = 3
    code = "UNBOUNDED_J_SET"


class ConvexityViolation(MorseError):
    exit_code = 3
    code = "CONVEXITY_VIOLATION"

    def __init__(self, message, sample=None):
        self.sample = sample
        super().__init__(message)


class NotConformal(MorseError):
    exit_code = 3
    code = "NOT_CONFORMAL"

    def __init__(self, message, sample=None):
        self.sample = sample
        super().__init__(message)


class NotSemipositive(MorseError):
    exit_code = 3
    code = "NOT_SEMIPOSITIVE"

    def __init__(self, message, sample=None):
        self.sample = sample
        super().__init__(message)


class QuadratureNonConvergence(MorseError):
    exit_code = 4
    code = "QUADRATURE_NONCONVERGENCE"


class SuiteFailure(MorseError):
    exit_code = 5
    code = "SUITE_FAILURE"
