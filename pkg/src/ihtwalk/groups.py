"""Finite groups with a canonical element enumeration.

Group elements are plain immutable values rather than wrapper objects:

* ``BitXorGroup`` (the group Z_2^d): elements are ints in ``[0, 2**d)``,
  composed by XOR. Bit ``j`` is the generator ``e_j = 2**j``.
* ``SymmetricGroup`` (S_n): elements are one-line permutation tuples of
  ``1..n``; ``(3,1,2)`` maps 1 -> 3, 2 -> 1, 3 -> 2.
* ``TableGroup``: elements are indices into an explicit composition table.

Every group fixes a deterministic canonical order (``rank``/``unrank``),
which downstream code uses as the vertex labelling of Cayley graphs.

Composition convention used throughout the package:
``compose(g, h)`` is "apply h first, then g", i.e. for permutations
``(g∘h)(i) = g(h(i))``.
"""

from __future__ import annotations

import itertools
import math
from functools import cached_property

DEFAULT_MAX_ORDER = 10_080


class FiniteGroup:
    """Common interface: composition, inverses, canonical rank/unrank."""

    name = "group"

    def __init__(self, order: int, max_order: int = DEFAULT_MAX_ORDER):
        if order > max_order:
            raise ValueError(
                f"group order {order} exceeds the enumeration cap {max_order}")
        self.order = int(order)

    # subclasses implement these five
    def identity(self):
        raise NotImplementedError

    def compose(self, g, h):
        raise NotImplementedError

    def inverse(self, g):
        raise NotImplementedError

    def rank(self, g) -> int:
        """0-based position of ``g`` in the canonical enumeration."""
        raise NotImplementedError

    def unrank(self, index: int):
        raise NotImplementedError

    def conjugate(self, s, g):
        """s . g . s^-1 under the group law."""
        return self.compose(s, self.compose(g, self.inverse(s)))

    @cached_property
    def elements(self) -> tuple:
        """All elements in canonical order; length equals the group order."""
        return tuple(self.unrank(i) for i in range(self.order))

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(order={self.order})"


class BitXorGroup(FiniteGroup):
    """Z_2^d: d-bit strings under bitwise XOR, enumerated by integer value."""

    def __init__(self, d: int, max_order: int = DEFAULT_MAX_ORDER):
        if d < 1:
            raise ValueError(f"bit length must be >= 1, got {d}")
        self.d = int(d)
        super().__init__(1 << d, max_order)
        self.name = f"Z2^{d}"

    def _check(self, g) -> int:
        if not isinstance(g, int) or isinstance(g, bool) or not 0 <= g < self.order:
            raise ValueError(f"{g!r} is not an element of {self.name}")
        return g

    def identity(self) -> int:
        return 0

    def compose(self, g: int, h: int) -> int:
        return self._check(g) ^ self._check(h)

    def inverse(self, g: int) -> int:
        return self._check(g)

    def rank(self, g: int) -> int:
        return self._check(g)

    def unrank(self, index: int) -> int:
        return self._check(index)

    def generator(self, j: int) -> int:
        """The weight-one string e_j = 2**j."""
        if not 0 <= j < self.d:
            raise ValueError(f"bit index {j} out of range for {self.name}")
        return 1 << j


class SymmetricGroup(FiniteGroup):
    """S_n on one-line tuples over 1..n, enumerated lexicographically."""

    def __init__(self, n: int, max_order: int = DEFAULT_MAX_ORDER):
        if n < 1:
            raise ValueError(f"degree must be >= 1, got {n}")
        self.n = int(n)
        super().__init__(math.factorial(n), max_order)
        self.name = f"S{n}"

    def _check(self, g) -> tuple:
        if not isinstance(g, tuple) or len(g) != self.n or sorted(g) != list(
                range(1, self.n + 1)):
            raise ValueError(f"{g!r} is not an element of {self.name}")
        return g

    def identity(self) -> tuple:
        return tuple(range(1, self.n + 1))

    def compose(self, g: tuple, h: tuple) -> tuple:
        g = self._check(g)
        h = self._check(h)
        return tuple(g[h[i] - 1] for i in range(self.n))

    def inverse(self, g: tuple) -> tuple:
        g = self._check(g)
        out = [0] * self.n
        for i, v in enumerate(g):
            out[v - 1] = i + 1
        return tuple(out)

    def rank(self, g: tuple) -> int:
        # Lehmer code of the one-line tuple gives the lexicographic rank.
        g = self._check(g)
        rank = 0
        pool = list(range(1, self.n + 1))
        for i, v in enumerate(g):
            k = pool.index(v)
            rank += k * math.factorial(self.n - 1 - i)
            pool.pop(k)
        return rank

    def unrank(self, index: int) -> tuple:
        if not 0 <= index < self.order:
            raise ValueError(f"rank {index} out of range for {self.name}")
        pool = list(range(1, self.n + 1))
        out = []
        for i in range(self.n):
            f = math.factorial(self.n - 1 - i)
            k, index = divmod(index, f)
            out.append(pool.pop(k))
        return tuple(out)


class TableGroup(FiniteGroup):
    """Group given by an explicit composition table.

    ``table[i][j]`` is the index of element_i . element_j. Identity,
    inverses and (for order <= 120) associativity are verified eagerly;
    larger tables get a randomized associativity spot check.
    """

    EXHAUSTIVE_LIMIT = 120

    def __init__(self, table, max_order: int = DEFAULT_MAX_ORDER):
        rows = [list(row) for row in table]
        n = len(rows)
        super().__init__(n, max_order)
        self.name = f"table-group({n})"
        if any(len(r) != n for r in rows):
            raise ValueError("composition table must be square")
        full = set(range(n))
        for r in rows:
            if set(r) != full:
                raise ValueError("composition table rows must be permutations")
        for c in range(n):
            if {rows[r][c] for r in range(n)} != full:
                raise ValueError("composition table columns must be permutations")
        self._table = tuple(tuple(r) for r in rows)
        self._identity = self._find_identity()
        self._inverses = self._find_inverses()
        self._check_associativity()

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self._table[e][g] == g and self._table[g][e] == g
                   for g in range(self.order)):
                return e
        raise ValueError("composition table has no identity element")

    def _find_inverses(self) -> tuple:
        e = self._identity
        inv = []
        for g in range(self.order):
            row = self._table[g]
            h = row.index(e)
            if self._table[h][g] != e:
                raise ValueError(f"element {g} has no two-sided inverse")
            inv.append(h)
        return tuple(inv)

    def _check_associativity(self):
        n = self.order
        t = self._table
        if n <= self.EXHAUSTIVE_LIMIT:
            triples = itertools.product(range(n), repeat=3)
        else:
            import random
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(5000))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError(
                    f"composition table is not associative at ({a},{b},{c})")

    def _check(self, g) -> int:
        if not isinstance(g, int) or isinstance(g, bool) or not 0 <= g < self.order:
            raise ValueError(f"{g!r} is not an element of {self.name}")
        return g

    def identity(self) -> int:
        return self._identity

    def compose(self, g: int, h: int) -> int:
        return self._table[self._check(g)][self._check(h)]

    def inverse(self, g: int) -> int:
        return self._inverses[self._check(g)]

    def rank(self, g: int) -> int:
        return self._check(g)

    def unrank(self, index: int) -> int:
        return self._check(index)
