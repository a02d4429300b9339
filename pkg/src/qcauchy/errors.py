"""Exception hierarchy shared by every module of the package."""


class QCauchyError(Exception):
    """Base class for all library errors."""


class NotAPartialOrder(QCauchyError):
    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"order relation is not antisymmetric at {pair}")


class NotALattice(QCauchyError):
    def __init__(self, pair, kind):
        self.pair = pair
        self.kind = kind
        super().__init__(f"elements {pair} have no {kind}")


class TypeMismatch(QCauchyError):
    pass


class NoInvolution(QCauchyError):
    def __init__(self, message="quantaloid carries no involution"):
        super().__init__(message)


class InvalidQuantaloid(QCauchyError):
    def __init__(self, report):
        self.report = report
        lines = "; ".join(str(v) for v in report[:5])
        super().__init__(f"quantaloid axioms violated: {lines}")


class InvalidCategory(QCauchyError):
    def __init__(self, report, what="category"):
        self.report = report
        lines = "; ".join(str(v) for v in report[:5])
        super().__init__(f"invalid {what}: {lines}")


class NotSymmetric(QCauchyError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"category {name!r} is not symmetric")


class NotLeftAdjoint(QCauchyError):
    pass


class SearchCapExceeded(QCauchyError):
    def __init__(self, where, size, cap):
        self.where = where
        self.size = size
        self.cap = cap
        super().__init__(f"search cap exceeded at {where}: size {size} > cap {cap}")


class NotBilateral(QCauchyError):
    def __init__(self, report):
        self.report = report
        super().__init__("quantaloid is not Cauchy-bilateral; the completion squares need not commute")


class PremiseViolated(QCauchyError):
    pass


class NotAGroupoid(QCauchyError):
    pass


class NotCommutative(QCauchyError):
    pass


class NotDistributive(QCauchyError):
    pass


class TopologyAxiomViolated(QCauchyError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"Grothendieck topology axiom '{axiom}' fails: {witness}")


class InvalidCategoryTable(QCauchyError):
    """A finite category given by composition tables breaks a category law."""
