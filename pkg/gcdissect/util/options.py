import logging
import os

from .ratio import to_ratio


log = logging.getLogger(__name__)

# Sentinel meaning "take the value from the environment or the class default".
_Default = object()


class SearchOptions(object):
    """ Tree search configuration.

    Options can be given once and passed to every search::

        options = SearchOptions(cap=6, tol=Fraction(0))
        hits = search_self_affine(leaf, 5, options=options)

    Individual keyword arguments of the search functions override the options
    object, so ``search_self_affine(leaf, 3, tol=1e-9, options=options)`` uses
    a tolerance of ``1e-9`` and everything else from ``options``.

    :param int cap:
        Largest number of leaves a tree enumeration may reach. Larger requests
        raise :class:`~gcdissect.exceptions.SearchCapExceeded`. When omitted
        the value is read from the ``GCDISSECT_SEARCH_CAP`` environment
        variable, falling back to :attr:`DEFAULT_CAP`.

    :param tol:
        Absolute tolerance for class comparisons. ``0`` demands exact
        rational equality; floats need a positive tolerance.

    :param bool prune:
        Whether the sound, target-aware tree reductions are applied to search
        hits. Off by default so the full enumeration stays the reference.

    :param int cache_size:
        Number of composed class sets memoised by the composition cache.

    :param max_hits:
        Stop expanding hit trees after this many; ``None`` for no limit.
    """

    #: Default enumeration cap on the number of leaves.
    DEFAULT_CAP = 8

    #: Environment variable overriding :attr:`DEFAULT_CAP`.
    CAP_ENVIRON = 'GCDISSECT_SEARCH_CAP'

    DEFAULT_CACHE_SIZE = 4096

    def __init__(self, cap=_Default, tol=0, prune=False,
                 cache_size=DEFAULT_CACHE_SIZE, max_hits=None):
        if cap is _Default:
            cap = self.cap_from_environ()
        self.cap = self._validate_count(cap, 'cap')
        self.tol = self._validate_tol(tol)
        self.prune = bool(prune)
        self.cache_size = self._validate_count(cache_size, 'cache_size')
        self.max_hits = (None if max_hits is None
                         else self._validate_count(max_hits, 'max_hits'))

    def __repr__(self):
        return ('%s(cap=%r, tol=%r, prune=%r, cache_size=%r, max_hits=%r)' % (
            type(self).__name__, self.cap, self.tol, self.prune,
            self.cache_size, self.max_hits))

    @classmethod
    def _validate_count(cls, value, name):
        """ Check that an integer option is a positive integer.

        :raises ValueError: If the value is not an integer or is less than 1.
        """
        if isinstance(value, bool):
            raise ValueError("Option %s was %r, but it must be an int." % (name, value))
        try:
            count = int(value)
        except (TypeError, ValueError):
            raise ValueError("Option %s was %r, but it must be an int." % (name, value))
        if count != value and not isinstance(value, str):
            raise ValueError("Option %s was %r, but it must be an int." % (name, value))
        if count < 1:
            raise ValueError("Attempted to set %s to %r, but it must be at "
                             "least 1." % (name, value))
        return count

    @classmethod
    def _validate_tol(cls, value):
        try:
            tol = to_ratio(value)
        except (TypeError, ValueError):
            raise ValueError("Tolerance %r is not a number." % (value,))
        if tol < 0:
            raise ValueError("Tolerance %r cannot be negative." % (value,))
        return tol

    @classmethod
    def cap_from_environ(cls, environ=None):
        """ Read the enumeration cap from ``GCDISSECT_SEARCH_CAP``.

        :raises ValueError: If the variable is set but not a positive integer.
        """
        environ = os.environ if environ is None else environ
        raw = environ.get(cls.CAP_ENVIRON)
        if raw is None or raw.strip() == '':
            return cls.DEFAULT_CAP
        cap = cls._validate_count(raw.strip(), cls.CAP_ENVIRON)
        log.debug("Search cap %d taken from %s", cap, cls.CAP_ENVIRON)
        return cap

    @classmethod
    def from_env(cls, environ=None, **kw):
        kw.setdefault('cap', cls.cap_from_environ(environ))
        return cls(**kw)

    @classmethod
    def resolve(cls, options=None, **overrides):
        """ Merge an optional options object with per-call keyword overrides.

        Overrides whose value is ``None`` are ignored.
        """
        if options is None:
            options = cls.from_env()
        changes = dict((k, v) for k, v in overrides.items() if v is not None)
        if not changes:
            return options
        return options.new(**changes)

    def new(self, **kw):
        params = dict(
            cap=self.cap,
            tol=self.tol,
            prune=self.prune,
            cache_size=self.cache_size,
            max_hits=self.max_hits,
        )
        params.update(kw)
        return type(self)(**params)
