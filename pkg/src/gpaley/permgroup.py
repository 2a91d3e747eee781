"""Permutation groups on ``range(n)``.

Permutations are numpy image arrays (``perm[v]`` is the image of ``v``) and
act on the right: ``compose(g, h)`` applies ``g`` first. A group keeps its
generators and builds a base and strong generating set on first use with the
deterministic Schreier-Sims algorithm.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

import numpy as np

from . import _config
from .errors import BoundExceeded, DegreeMismatch, NotTransitive
from .finite_field import FieldSpec


def identity(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64)


def compose(g, h) -> np.ndarray:
    """The permutation ``x -> h[g[x]]``."""
    return np.asarray(h)[np.asarray(g)]


def inverse(g) -> np.ndarray:
    g = np.asarray(g)
    inv = np.empty_like(g)
    inv[g] = np.arange(len(g), dtype=g.dtype)
    return inv


def is_identity(g) -> bool:
    g = np.asarray(g)
    return bool((g == np.arange(len(g))).all())


def from_cycles(n: int, *cycles: Sequence[int]) -> np.ndarray:
    g = identity(n)
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            g[a] = b
    return g


def _as_perm(g, n=None) -> np.ndarray:
    g = np.asarray(g, dtype=np.int64)
    if g.ndim != 1 or (n is not None and len(g) != n):
        raise DegreeMismatch(f"expected a permutation of degree {n}")
    if not np.array_equal(np.sort(g), np.arange(len(g))):
        raise ValueError("image array is not a bijection")
    return g


class _Level:
    __slots__ = ("point", "gens", "trans", "inv")

    def __init__(self, point: int, gens: list[np.ndarray], n: int):
        self.point = point
        self.gens = gens
        self.trans = {}
        self.inv = {}
        self.rebuild(n)

    def rebuild(self, n: int):
        ident = identity(n)
        trans = {self.point: ident}
        queue = [self.point]
        for x in queue:
            u = trans[x]
            for s in self.gens:
                y = int(s[x])
                if y not in trans:
                    trans[y] = s[u]
                    queue.append(y)
        self.trans = trans
        self.inv = {y: inverse(u) for y, u in trans.items()}

    def add(self, g: np.ndarray):
        """Append a generator and extend the orbit without a full rebuild."""
        self.gens.append(g)
        queue = list(self.trans)
        old = len(queue)
        for i, x in enumerate(queue):
            u = self.trans[x]
            # old points only need the new generator
            for s in ((g,) if i < old else self.gens):
                y = int(s[x])
                if y not in self.trans:
                    w = s[u]
                    self.trans[y] = w
                    self.inv[y] = inverse(w)
                    queue.append(y)


class PermutationGroup:
    """A permutation group given by generators.

    ``base`` optionally seeds the start of the base (used for stabilisers).
    """

    def __init__(self, generators: Iterable, degree: int | None = None, base: Sequence[int] = ()):
        gens = [np.asarray(g, dtype=np.int64) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch("generators of different degrees")
        self.degree = degree
        self.generators = gens
        self._base_prefix = [int(b) for b in base]
        self._levels: list[_Level] | None = None

    @classmethod
    def from_strong_generators(cls, generators, base, degree) -> "PermutationGroup":
        """Adopt a known base and strong generating set without re-verifying it.

        Only for generator sets that are strong by construction, such as the
        output of the automorphism search; :meth:`verify_strong` re-checks.
        """
        grp = cls(generators, degree)
        levels = []
        for i, b in enumerate(base):
            fixing = [g for g in grp.generators if all(g[c] == c for c in base[:i])]
            levels.append(_Level(int(b), fixing, degree))
        grp._levels = levels
        grp._base_prefix = [int(b) for b in base]
        return grp

    @classmethod
    def from_known_order(
        cls, generators, degree: int, order: int, base: Sequence[int] = (), seed: int = 0
    ) -> "PermutationGroup":
        """Build the BSGS by random Schreier-Sims, stopping at ``order``.

        For a partial chain the product of basic orbit lengths is at most the
        group order, with equality only when the chain is complete, so stopping
        there is exact. A chain that outgrows ``order`` raises AssertionError;
        one that stalls falls back to the deterministic algorithm, which must
        then agree.
        """
        grp = cls(generators, degree, base)
        levels = grp._random_schreier_sims(order, seed)
        if levels is None:
            levels = grp._bsgs()
        grp._levels = levels
        if grp.order() != order:
            raise AssertionError(f"group has order {grp.order()}, expected {order}")
        return grp

    def _random_schreier_sims(self, target: int, seed: int, stall: int = 60):
        n = self.degree
        ident = identity(n)
        strong = [g for g in self.generators if not np.array_equal(g, ident)]
        base = list(self._base_prefix)
        for g in strong:
            if all(g[b] == b for b in base):
                base.append(int(np.flatnonzero(g != ident)[0]))
        levels = []
        for i, b in enumerate(base):
            levels.append(_Level(b, [g for g in strong if all(g[c] == c for c in base[:i])], n))

        def size():
            return math.prod(len(l.trans) for l in levels)

        if not strong or size() == target:
            return levels
        rng = np.random.default_rng(seed)
        # product replacement; the pool always generates the whole group
        pool = [strong[i % len(strong)] for i in range(max(10, len(strong)))]
        acc = ident

        def rand():
            nonlocal acc
            i, j = rng.choice(len(pool), size=2, replace=False)
            pool[i] = compose(pool[i], pool[j] if rng.random() < 0.5 else inverse(pool[j]))
            acc = compose(acc, pool[i])
            return acc

        for _ in range(50):
            rand()
        misses = 0
        while size() < target:
            h, j = self._strip(rand(), levels)
            if j == len(levels) and np.array_equal(h, ident):
                misses += 1
                if misses > stall:
                    return None
                continue
            misses = 0
            if j == len(levels):
                levels.append(_Level(int(np.flatnonzero(h != ident)[0]), [], n))
            for l in range(j + 1):
                levels[l].add(h)
        if size() > target:
            raise AssertionError("generators produce a group larger than the stated order")
        return levels

    # -- Schreier-Sims --------------------------------------------------------
    def _strip(self, h, levels, start=0):
        for j in range(start, len(levels)):
            lev = levels[j]
            beta = int(h[lev.point])
            inv = lev.inv.get(beta)
            if inv is None:
                return h, j
            h = inv[h]
        return h, len(levels)

    def _schreier_sims(self, gens, base_prefix):
        n = self.degree
        ident = identity(n)
        base = list(base_prefix)
        strong = [g for g in gens if not np.array_equal(g, ident)]
        for g in strong:
            if all(g[b] == b for b in base):
                base.append(int(np.flatnonzero(g != ident)[0]))
        levels = []
        for i, b in enumerate(base):
            fixing = [g for g in strong if all(g[c] == c for c in base[:i])]
            levels.append(_Level(b, fixing, n))
        i = len(levels) - 1
        while i >= 0:
            lev = levels[i]
            new = None
            for beta, u in lev.trans.items():
                for s in lev.gens:
                    img = int(s[beta])
                    # u s u_img^-1 fixes base[:i+1]
                    h = lev.inv[img][s[u]]
                    if np.array_equal(h, ident):
                        continue
                    h, j = self._strip(h, levels, i + 1)
                    if j < len(levels) or not np.array_equal(h, ident):
                        new = (h, j)
                        break
                if new is not None:
                    break
            if new is None:
                i -= 1
                continue
            h, j = new
            if j == len(levels):
                levels.append(_Level(int(np.flatnonzero(h != ident)[0]), [], n))
            for l in range(i + 1, j + 1):
                levels[l].gens.append(h)
                levels[l].rebuild(n)
            i = j
        return levels

    def _bsgs(self):
        if self._levels is None:
            self._levels = self._schreier_sims(self.generators, self._base_prefix)
        return self._levels

    def verify_strong(self) -> bool:
        """Rebuild the BSGS by Schreier-Sims and compare orders."""
        levels = self._schreier_sims(self.generators, [lev.point for lev in self._bsgs()])
        return math.prod(len(l.trans) for l in levels) == self.order()

    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self._bsgs()]

    @property
    def strong_generators(self) -> list[np.ndarray]:
        # Schreier generators are filed only at the levels they were sifted to
        out, seen = [], set()
        for lev in self._bsgs():
            for g in lev.gens:
                key = g.tobytes()
                if key not in seen:
                    seen.add(key)
                    out.append(g)
        return out

    def basic_orbit_lengths(self) -> list[int]:
        return [len(lev.trans) for lev in self._bsgs()]

    def order(self) -> int:
        return math.prod(self.basic_orbit_lengths())

    def contains(self, perm) -> bool:
        perm = _as_perm(perm, self.degree)
        levels = self._bsgs()
        h, j = self._strip(perm, levels)
        return j == len(levels) and is_identity(h)

    __contains__ = contains

    # -- orbits and blocks ----------------------------------------------------
    def orbit(self, point: int) -> list[int]:
        seen = {int(point)}
        queue = [int(point)]
        for x in queue:
            for g in self.generators:
                y = int(g[x])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        out, seen = [], set()
        for v in range(self.degree):
            if v not in seen:
                orb = self.orbit(v)
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    def minimal_block(self, a: int, b: int) -> list[int]:
        """Smallest block containing ``a`` and ``b`` (union-find closure)."""
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        gens = [g.tolist() for g in self.generators]
        pairs = [(a, b)]
        parent[find(b)] = find(a)
        while pairs:
            x, y = pairs.pop()
            for g in gens:
                u, v = find(g[x]), find(g[y])
                if u != v:
                    parent[v] = u
                    pairs.append((u, v))
        root = find(a)
        return [v for v in range(self.degree) if find(v) == root]

    def is_primitive(self) -> bool:
        if not self.is_transitive():
            raise NotTransitive("primitivity is defined for transitive groups")
        n = self.degree
        return all(len(self.minimal_block(0, w)) == n for w in range(1, n))

    # -- subgroups --------------------------------------------------------------
    def stabilizer(self, point: int) -> "PermutationGroup":
        """Explicit point stabiliser, generated by the strong generators fixing it."""
        point = int(point)
        if self._base_prefix[:1] == [point] or (self._levels and self._levels[0].point == point):
            levels = self._bsgs()
        else:
            levels = self._schreier_sims(self.generators, [point])
        gens = levels[1].gens if len(levels) > 1 else []
        sub = PermutationGroup(gens, self.degree)
        if len(levels) > 1:
            sub._levels = [_Level(l.point, list(l.gens), self.degree) for l in levels[1:]]
        else:
            sub._levels = []
        return sub

    def stabilizer_order(self, point: int) -> int:
        return self.order() // len(self.orbit(point))

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def normalizes(self, other: "PermutationGroup") -> bool:
        """True iff conjugating each generator of ``other`` by each generator
        of this group lands back in ``other``."""
        if other.degree != self.degree:
            raise DegreeMismatch("groups act on different point sets")
        for x in self.generators:
            xi = inverse(x)
            for t in other.generators:
                if not other.contains(compose(compose(xi, t), x)):
                    return False
        return True

    def normal_closure(self, subgens: Iterable) -> "PermutationGroup":
        """Smallest subgroup normalised by this group containing ``subgens``."""
        gens = [np.asarray(g, dtype=np.int64) for g in subgens]
        N = PermutationGroup(gens, self.degree)
        changed = True
        while changed:
            changed = False
            for t in list(N.generators):
                for x in self.generators:
                    c = compose(compose(inverse(x), t), x)
                    if not N.contains(c):
                        N = PermutationGroup(N.generators + [c], self.degree)
                        changed = True
        return N

    def derived_subgroup(self) -> "PermutationGroup":
        comms = []
        gens = self.generators
        for g, h in itertools.combinations(gens, 2):
            c = compose(compose(inverse(g), inverse(h)), compose(g, h))
            if not is_identity(c):
                comms.append(c)
        if not comms:
            return PermutationGroup([], self.degree)
        return self.normal_closure(comms)

    def elements(self, limit: int = 10**6) -> list[tuple[int, ...]]:
        """All elements by closure; a brute-force oracle for small groups."""
        ident = tuple(range(self.degree))
        seen = {ident}
        queue = [ident]
        gens = [g.tolist() for g in self.generators]
        for x in queue:
            for g in gens:
                y = tuple(g[v] for v in x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        raise BoundExceeded("group too large to enumerate")
                    queue.append(y)
        return list(seen)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [g.tolist() for g in self.generators],
            "order": str(self.order()),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PermutationGroup":
        grp = cls([_as_perm(g) for g in data["generators"]], data["degree"])
        if "order" in data and int(data["order"]) != grp.order():
            raise ValueError("stored order does not match the generators")
        return grp

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, generators={len(self.generators)})"


# -- the affine groups -------------------------------------------------------

def translation(field: FieldSpec, y: int) -> np.ndarray:
    return field.add_arrays(np.arange(field.q), y)


def scalar_map(field: FieldSpec, c: int) -> np.ndarray:
    return field.mul_arrays(np.arange(field.q), c)


def frobenius_map(field: FieldSpec) -> np.ndarray:
    return field.pow_arrays(np.arange(field.q), field.p)


def translations(field: FieldSpec) -> PermutationGroup:
    """The translation group T, generated by the F_p-basis translations."""
    return PermutationGroup([translation(field, e) for e in field.basis()], field.q)


def agl_one(field: FieldSpec) -> PermutationGroup:
    """The one-dimensional semilinear affine group on GF(q), order q(q-1)R."""
    gens = [translation(field, e) for e in field.basis()]
    gens.append(scalar_map(field, field.omega))
    gens.append(frobenius_map(field))
    return PermutationGroup(gens, field.q)


def affine_generators(field: FieldSpec, k: int) -> PermutationGroup:
    """Translations, multiplication by omega^k and the Frobenius map.

    This group preserves GPaley(q, (q-1)/k) and has order q * (q-1)/k * R.
    """
    from .paley import GPaleyParams

    GPaleyParams(field, k)
    gens = [translation(field, e) for e in field.basis()]
    gens.append(scalar_map(field, field.omega_pow(k)))
    gens.append(frobenius_map(field))
    grp = PermutationGroup(gens, field.q)
    expected = field.q * ((field.q - 1) // k) * field.R
    if grp.order() != expected:
        raise AssertionError(f"affine group has order {grp.order()}, expected {expected}")
    return grp


def wreath_product_action(a: int, b: int) -> PermutationGroup:
    """S_a wr S_b in product action on b-tuples over range(a) (lex order)."""
    if a**b > _config.max_q():
        raise BoundExceeded(f"{a}^{b} points exceeds bound")
    tuples = np.array(list(itertools.product(range(a), repeat=b)), dtype=np.int64)
    weights = a ** np.arange(b - 1, -1, -1)

    def act(new_tuples):
        return new_tuples @ weights

    gens = []
    if a >= 2:
        for cyc in ([1, 0] + list(range(2, a)), list(range(1, a)) + [0]):
            t = tuples.copy()
            t[:, 0] = np.asarray(cyc)[t[:, 0]]
            gens.append(act(t))
    if b >= 2:
        gens.append(act(tuples[:, [1, 0] + list(range(2, b))]))
        gens.append(act(tuples[:, list(range(1, b)) + [0]]))
    return PermutationGroup(gens, a**b)
