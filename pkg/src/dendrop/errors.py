"""Exception types shared across the package."""


class DendropError(Exception):
    """Base class for all library errors."""


# -- exact linear algebra ----------------------------------------------------

class SingularMatrixError(DendropError):
    """Matrix has determinant zero; no inverse exists."""


class NoSolutionError(DendropError):
    """Right-hand side is not in the column span of the matrix."""


class DimensionMismatchError(DendropError):
    """Operands have incompatible dimensions."""


class FieldMismatchError(DendropError):
    """Operands live over different ground fields."""


# -- structures and operators ------------------------------------------------

class NotAssociativeError(DendropError):
    """Algebra fails the associativity check required here."""


class KindMismatchError(DendropError):
    """Operator or structure has the wrong kind for this operation."""


class NotInvertibleError(DendropError):
    """Witness matrix is singular where a bijection is required."""


class NotIntertwiningError(DendropError):
    """Candidate map fails the required morphism identities."""


class NotMultiplicativeError(DendropError):
    """Candidate map is not an algebra homomorphism."""


class InvalidOperatorError(DendropError):
    """Operator fails its defining relation; construction refused."""


class InvalidDendriformError(DendropError):
    """Dendriform structure fails its axioms; construction refused."""


class KernelNotIdealError(DendropError):
    """Kernel of the operator is not an ideal of the domain product."""


# -- enumeration -------------------------------------------------------------

class BudgetExceededError(DendropError):
    """Candidate space larger than the configured enumeration budget."""


class FieldNotFiniteError(DendropError):
    """Operation requires a finite ground field."""


class DimensionCapError(DendropError):
    """Dimension above the configured hard cap for exhaustive search."""


# -- document format ---------------------------------------------------------

class DocumentSyntaxError(DendropError):
    """Input is not well-formed JSON; position reported when known."""


class SchemaError(DendropError):
    """Document violates the schema; offending field named in message."""


class BadRationalError(DendropError):
    """Malformed scalar literal (e.g. zero denominator)."""
