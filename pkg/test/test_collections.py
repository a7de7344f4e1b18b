import unittest

from gcdissect._collections import RecentlyUsedContainer as Container


class TestLRUContainer(unittest.TestCase):
    def test_maxsize(self):
        d = Container(5)

        for i in range(5):
            d[i] = str(i)

        self.assertEqual(len(d), 5)

        for i in range(5):
            self.assertEqual(d[i], str(i))

        d[i+1] = str(i+1)

        self.assertEqual(len(d), 5)
        self.assertFalse(0 in d)
        self.assertTrue(i+1 in d)

    def test_expire(self):
        d = Container(5)

        for i in range(5):
            d[i] = str(i)

        for i in range(5):
            d.get(0)

        # Add one more entry
        d[5] = '5'

        self.assertEqual(d.keys(), [2, 3, 4, 0, 5])

    def test_same_key(self):
        d = Container(5)

        for i in range(10):
            d['foo'] = i

        self.assertEqual(d.keys(), ['foo'])
        self.assertEqual(len(d), 1)

    def test_delete(self):
        d = Container(5)

        for i in range(5):
            d[i] = True

        del d[0]
        self.assertFalse(0 in d)

        d.pop(1)
        self.assertFalse(1 in d)

    def test_get_or_compute(self):
        d = Container(2)
        calls = []

        def factory():
            calls.append(1)
            return 'value'

        self.assertEqual(d.get_or_compute('a', factory), 'value')
        self.assertEqual(d.get_or_compute('a', factory), 'value')
        self.assertEqual(len(calls), 1)
        self.assertEqual((d.hits, d.misses), (1, 1))

    def test_resize(self):
        d = Container(5)
        for i in range(5):
            d[i] = i
        d.resize(2)
        self.assertEqual(d.keys(), [3, 4])
        d.clear()
        self.assertEqual(len(d), 0)
        self.assertEqual(d.hits, 0)

    def test_iter(self):
        d = Container()
        d[0] = 1
        self.assertRaises(NotImplementedError, d.__iter__)
