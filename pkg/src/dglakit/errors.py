"""Exception hierarchy. Mathematical failures raise, axiom violations are data."""


class DglaError(Exception):
    exit_code = 1


class NotASubspace(DglaError):
    pass


class WindowTooSmall(DglaError):
    pass


class InvalidMorphism(DglaError):
    pass


class NegativeCohomology(DglaError):
    pass


class NotConcentrated(DglaError):
    pass


class NotSmallExtension(DglaError):
    pass


class NotMC(DglaError):
    pass


class NotAveragable(DglaError):
    pass


class NotStable(DglaError):
    pass


class InvalidAction(DglaError):
    pass


class ValidationError(DglaError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report or []


class ParseError(DglaError):
    exit_code = 2
