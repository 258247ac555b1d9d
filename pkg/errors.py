"""Exception types shared by every qcox module."""


class QcoxError(Exception):
    """Base class for all domain errors"""


class ParseError(QcoxError):
    """Element text does not follow the grammar"""


class MembershipError(QcoxError):
    """Permutation/colors do not describe an element of G(m,p,n)"""


class ParamsMismatchError(QcoxError):
    """Operands live in different groups"""


class UnsupportedGroupError(QcoxError):
    """Operation is not available for these group parameters"""


class NotParabolicQuasiCoxeterError(QcoxError):
    """Closed form requires a (parabolic) quasi-Coxeter element"""


class GraphShapeError(QcoxError):
    """Reflection graph has the wrong shape or size for the request"""


class MismatchError(QcoxError):
    """A closed form disagrees with its brute-force counterpart"""


class CapExceededError(QcoxError):
    """A search outgrew its configured cap"""

    def __init__(self, what, cap):
        super().__init__(f"{what} exceeded cap of {cap}")
        self.what = what
        self.cap = cap
