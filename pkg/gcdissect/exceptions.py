import functools


## Base Exceptions

class DissectionError(Exception):
    "Base exception used by this module."
    pass

class DissectionWarning(Warning):
    "Base warning used by this module."
    pass



class QuadrangleError(DissectionError, ValueError):
    "Raised when four points do not form a convex, non-degenerate quadrangle."

    def __init__(self, points, message):
        self.points = points
        self.message = message
        DissectionError.__init__(self, "%s: %s" % (message, _format_points(points)))

    def __reduce__(self):
        # For pickling purposes.
        return self.__class__, (self.points, self.message)


class AmbiguousTrapezoidError(QuadrangleError):
    """Raised when a float parallelism test lands inside the tolerance band.

    The side pair is neither clearly parallel nor clearly converging, so the
    class (trapezoid or not) cannot be decided without guessing.
    """

    def __init__(self, points, cross, band):
        self.cross = cross
        self.band = band
        QuadrangleError.__init__(
            self, points,
            "Ambiguous trapezoid (side cross product %r within band %r)" % (cross, band))

    def __reduce__(self):
        return self.__class__, (self.points, self.cross, self.band)


class ClassError(DissectionError, ValueError):
    "Raised when class parameters or a class operation are invalid."
    pass


class NoGlueingError(DissectionError):
    """Raised when two class terms cannot be glued with the given operation.

    :param row: Notation of the glueing pattern that was requested, e.g.
        ``"Q . P"``.
    :param reason: Why that pattern admits no parent quadrangle.
    """

    def __init__(self, row, reason):
        self.row = row
        self.reason = reason
        DissectionError.__init__(self, "No glueing for %s: %s" % (row, reason))

    def __reduce__(self):
        return self.__class__, (self.row, self.reason)


class SearchCapExceeded(DissectionError):
    "Raised when a tree enumeration would exceed the configured leaf cap."

    def __init__(self, n, cap, estimate):
        self.n = n
        self.cap = cap
        self.estimate = estimate
        message = ("Refusing to enumerate trees with %d leaves (cap is %d, "
                   "about %d canonical trees)" % (n, cap, estimate))
        DissectionError.__init__(self, message)

    def __reduce__(self):
        return self.__class__, (self.n, self.cap, self.estimate)


class RefusalError(DissectionError):
    """Base exception for requests that are well formed but impossible.

    The CLI turns these into exit code 1.
    """

    def __init__(self, reason):
        self.reason = reason
        DissectionError.__init__(self, reason)

    def __reduce__(self):
        return self.__class__, (self.reason,)


class KiteObstructionError(RefusalError):
    "Raised when a 5-piece glass-cut dissection of an affine kite is requested."
    pass


class ParityError(RefusalError):
    "Raised when an even glass-cut dissection of a non-trapezoid is requested."
    pass


class ThresholdError(RefusalError):
    "Raised when a trapezoid parameter is below the reachable bound."

    def __init__(self, gamma, bound):
        self.gamma = gamma
        self.bound = bound
        RefusalError.__init__(
            self, "T(%s) is below the bound %s for this construction" % (gamma, bound))

    def __reduce__(self):
        return self.__class__, (self.gamma, self.bound)


class UnrealizableTreeError(RefusalError):
    "Raised when a tree cannot produce the requested root class."
    pass


class BracketError(DissectionError):
    "Raised when a root bracket is lost or a bisection does not converge."

    def __init__(self, message, **diagnostics):
        self.message = message
        self.diagnostics = diagnostics
        if diagnostics:
            details = ', '.join('%s=%s' % item for item in sorted(diagnostics.items()))
            message = '%s (%s)' % (message, details)
        DissectionError.__init__(self, message)

    def __reduce__(self):
        # Diagnostics are keyword-only, so they ride along in a partial.
        return functools.partial(self.__class__, **self.diagnostics), (self.message,)


class PlanFormatError(DissectionError, ValueError):
    "Raised when a plan or plan document is structurally malformed."
    pass


class TreeFormatError(DissectionError, ValueError):
    "Raised when the text form of a dissection tree cannot be parsed."

    def __init__(self, text, position, message):
        self.text = text
        self.position = position
        self.message = message
        DissectionError.__init__(
            self, "%s at position %d of %r" % (message, position, text))

    def __reduce__(self):
        return self.__class__, (self.text, self.position, self.message)


class InexactWarning(DissectionWarning):
    "Warned when float parameters are compared without a tolerance."
    pass


def _format_points(points):
    if not points:
        return '<no points>'
    try:
        return ' '.join('(%s,%s)' % (x, y) for x, y in points)
    except (TypeError, ValueError):
        return repr(points)
