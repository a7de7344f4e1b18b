from collections import OrderedDict
from collections.abc import MutableMapping
from threading import RLock


__all__ = ['RecentlyUsedContainer']


_Null = object()


class RecentlyUsedContainer(MutableMapping):
    """
    Provides a thread-safe dict-like container which maintains up to
    ``maxsize`` keys while throwing away the least-recently-used keys beyond
    ``maxsize``. Used to memoise composed class sets, whose keys are the
    hashable operands of a glueing.

    :param maxsize:
        Maximum number of recent elements to retain.
    """

    ContainerCls = OrderedDict

    def __init__(self, maxsize=10):
        self._maxsize = maxsize
        self.hits = 0
        self.misses = 0

        self._container = self.ContainerCls()
        self.lock = RLock()

    def __getitem__(self, key):
        # Re-insert the item, moving it to the end of the eviction line.
        with self.lock:
            item = self._container.pop(key)
            self._container[key] = item
            return item

    def __setitem__(self, key, value):
        with self.lock:
            self._container[key] = value
            self._container.move_to_end(key)
            if len(self._container) > self._maxsize:
                self._container.popitem(last=False)

    def __delitem__(self, key):
        with self.lock:
            del self._container[key]

    def __len__(self):
        with self.lock:
            return len(self._container)

    def __iter__(self):
        raise NotImplementedError('Iteration over this class is unlikely to be threadsafe.')

    def get_or_compute(self, key, factory):
        """
        Return the cached value for ``key``, calling ``factory()`` and storing
        its result on a miss. ``factory`` runs outside the lock.
        """
        with self.lock:
            value = self._container.get(key, _Null)
            if value is not _Null:
                self.hits += 1
                self._container.move_to_end(key)
                return value
            self.misses += 1
        value = factory()
        self[key] = value
        return value

    def resize(self, maxsize):
        with self.lock:
            self._maxsize = maxsize
            while len(self._container) > self._maxsize:
                self._container.popitem(last=False)

    def clear(self):
        with self.lock:
            self._container.clear()
            self.hits = self.misses = 0

    def keys(self):
        with self.lock:
            return list(self._container.keys())
