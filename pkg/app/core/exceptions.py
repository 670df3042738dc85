from fastapi import status

EXIT_INPUT_ERROR = 2
EXIT_COMPARISON_FAILURE = 1


class BaseEngineError(Exception):
    """Base class for all errors raised by the algebra engine."""
    def __init__(self, status_code: int, detail: str, exit_code: int = EXIT_INPUT_ERROR):
        super().__init__(detail)
        self.status_code = status_code
        self.detail = detail
        self.exit_code = exit_code


# --- Scalar & Linear Algebra Errors ---

class DivisionByZero(BaseEngineError):
    """Raised when a zero Scalar is inverted or used as a denominator."""
    def __init__(self, detail="Division by zero in GF(2)(a)"):
        super().__init__(status_code=status.HTTP_400_BAD_REQUEST, detail=detail)

class IndeterminateSubstitution(BaseEngineError):
    """Raised when substituting for the parameter produces 0/0."""
    def __init__(self, detail="Substitution produces an indeterminate 0/0"):
        super().__init__(status_code=status.HTTP_400_BAD_REQUEST, detail=detail)

class ScalarParseError(BaseEngineError):
    """Raised when scalar, monomial or field text cannot be parsed."""
    def __init__(self, detail="Malformed scalar expression"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class NoSolution(BaseEngineError):
    """Raised when a linear system is inconsistent."""
    def __init__(self, detail="The linear system has no solution"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)


# --- Structure Errors (liesuper / cartan) ---

class InvalidSeed(BaseEngineError):
    """Raised when a filtration seed is not a subalgebra or not L0-invariant."""
    def __init__(self, detail="Filtration seed L_-1 is not L_0-invariant"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class NotAnIdeal(BaseEngineError):
    """Raised when a quotient is taken by a subspace that is not an ideal."""
    def __init__(self, detail="Subspace is not an ideal closed under squaring"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class NormalizationError(BaseEngineError):
    """Raised when a Cartan matrix row cannot be rescaled to the demanded diagonal."""
    def __init__(self, detail="Cartan matrix cannot be normalized"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class BuildNotTerminated(BaseEngineError):
    """Raised when the g(A) construction reaches the height cap."""
    def __init__(self, detail="Construction did not terminate below the height cap"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class CenterMismatch(BaseEngineError):
    """Raised when the relation matrix T disagrees with the computed center."""
    def __init__(self, detail="Relation matrix T is inconsistent with the computed center"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class ReflectionUndefined(BaseEngineError):
    """Raised when a reflection cannot be carried out in the given root."""
    def __init__(self, detail="Reflection is undefined for this root"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class UnknownPreset(BaseEngineError):
    """Raised when a preset name or parameter set is not known."""
    def __init__(self, detail="Unknown preset"):
        super().__init__(status_code=status.HTTP_404_NOT_FOUND, detail=detail)


# --- Vector Field & Prolongation Errors ---

class BadSeriesParams(BaseEngineError):
    """Raised when series parameters are inconsistent with the family."""
    def __init__(self, detail="Inconsistent series parameters"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class RealizationInconsistent(BaseEngineError):
    """Raised when a graded algebra cannot be realized by vector fields."""
    def __init__(self, detail="Structure constants are not realizable"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class UnknownFixture(BaseEngineError):
    """Raised when a fixture name does not resolve to a data file."""
    def __init__(self, detail="Unknown fixture"):
        super().__init__(status_code=status.HTTP_404_NOT_FOUND, detail=detail)

class NotSubmodule(BaseEngineError):
    """Raised when the partial-prolong seed is not a g_0-submodule of g_1."""
    def __init__(self, detail="V1 is not a g_0-submodule of the complete g_1"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)


# --- Forms & Catalog Errors ---

class DegenerateForm(BaseEngineError):
    """Raised when a bilinear form that must be non-degenerate is degenerate."""
    def __init__(self, detail="The bilinear form is degenerate"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class NotApplicable(BaseEngineError):
    """Raised when an extension is applied outside the oo/pe families."""
    def __init__(self, detail="Extension is not applicable to this algebra"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class InvalidParams(BaseEngineError):
    """Raised when dimension-formula parameters are outside their validity range."""
    def __init__(self, detail="Parameters outside the validity range of the formula"):
        super().__init__(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)

class SpecFileError(BaseEngineError):
    """Raised for malformed input files, with line/column when known."""
    def __init__(self, detail="Malformed input file"):
        super().__init__(status_code=status.HTTP_400_BAD_REQUEST, detail=detail)
