"""Small permutation-group engine backing the ramification tables.

Groups are given by degree-n generators (shipped as plain-text assets) and
carry a second, paired action of degree m built from the cosets of a
distinguished subgroup.  Everything downstream (tame target tables, orbit
checks for the wild tables) is derived from these actions, not transcribed.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from functools import lru_cache

ELEMENT_CAP = 10 ** 5


# ----------------------------------------------------------------------------
# permutations as image tuples on 0..n-1
# ----------------------------------------------------------------------------

def perm_mul(a, b):
    """Composition a∘b: apply b first."""
    return tuple(a[b[i]] for i in range(len(a)))


def perm_inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_order(a):
    ident = tuple(range(len(a)))
    q, k = a, 1
    while q != ident:
        q = perm_mul(a, q)
        k += 1
    return k


def cycle_type(a):
    """Weakly decreasing cycle lengths of a permutation."""
    n = len(a)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        out.append(length)
    out.sort(reverse=True)
    return tuple(out)


def perm_sign(a):
    return -1 if (len(a) - len(cycle_type(a))) % 2 else 1


def orbits_of(perms, n):
    """Orbit partition of {0..n-1} under a list of permutations."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i in range(n):
            a, b = find(i), find(p[i])
            if a != b:
                parent[a] = b
    sizes = {}
    for i in range(n):
        r = find(i)
        sizes[r] = sizes.get(r, 0) + 1
    return tuple(sorted(sizes.values(), reverse=True))


def closure(gens, cap=ELEMENT_CAP):
    """All elements generated by ``gens`` (BFS); error past ``cap``."""
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = perm_mul(g, x)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
                    if len(seen) > cap:
                        raise ValueError("group order exceeds element cap")
        frontier = new
    return sorted(seen)


# ----------------------------------------------------------------------------
# ramification partitions and the tame exponent
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class RamificationPartition:
    """Weakly decreasing positive parts summing to the action degree."""

    parts: tuple

    def __post_init__(self):
        assert all(p > 0 for p in self.parts)
        assert tuple(sorted(self.parts, reverse=True)) == self.parts

    @property
    def degree(self):
        return sum(self.parts)


def tame_exponent(parts):
    """Discriminant exponent of a tame cycle type: sum (e_j - 1) = n - t."""
    return sum(parts) - len(parts)


# ----------------------------------------------------------------------------
# group actions
# ----------------------------------------------------------------------------

class PermGroupAction:
    """A finite permutation group with a primary and a paired coset action.

    ``gens`` act on {0..n-1}; the paired degree-m action is the action on the
    left cosets of ``paired_subgroup``.  Element pairs are closed jointly, so
    the pairing is a homomorphism by construction; it is re-verified on random
    words at load time anyway.
    """

    def __init__(self, label, gens, paired_subgroup_order, paired_degree,
                 expected_order):
        self.label = label
        self.degree = len(gens[0])
        self.gens = [tuple(g) for g in gens]
        self.elements_n = closure(self.gens)
        self.order = len(self.elements_n)
        if self.order != expected_order:
            raise ValueError(f"{label}: order {self.order} != {expected_order}")
        if orbits_of(self.gens, self.degree) != (self.degree,):
            raise ValueError(f"{label}: primary action not transitive")
        sub = self._find_subgroup_of_order(paired_subgroup_order)
        if sub is None:
            raise ValueError(f"{label}: no subgroup of order "
                             f"{paired_subgroup_order} found")
        self.paired_subgroup = sub
        self.paired_degree = paired_degree
        self.paired_gens = self._coset_action(sub, self.gens)
        if len(self.paired_gens[0]) != paired_degree:
            raise ValueError(f"{label}: coset action degree mismatch")
        if orbits_of(self.paired_gens, paired_degree) != (paired_degree,):
            raise ValueError(f"{label}: paired action not transitive")
        # joint closure: element -> (perm_n, perm_m)
        self.pairs = self._closed_pairs()
        self._verify_homomorphism()

    # -- construction helpers -------------------------------------------------

    def _find_subgroup_of_order(self, target):
        """Deterministic search for a subgroup of the requested order.

        Scans 2-generated subgroups in sorted generator order; every paired
        subgroup used here (order 21, 10, 20) is 2-generated.
        """
        elems = self.elements_n
        for a in elems:
            for b in elems:
                if b < a:
                    continue
                try:
                    sub = closure([a, b], cap=4 * target)
                except ValueError:
                    continue
                if len(sub) == target:
                    return sub
        return None

    def _coset_action(self, subgroup, perms):
        sub = set(subgroup)
        coset_of = {}
        reps = []
        for g in self.elements_n:
            if g in coset_of:
                continue
            idx = len(reps)
            reps.append(g)
            for h in sub:
                coset_of[perm_mul(g, h)] = idx
        out = []
        for p in perms:
            out.append(tuple(coset_of[perm_mul(p, rep)] for rep in reps))
        return out

    def _closed_pairs(self):
        n, m = self.degree, self.paired_degree
        ident = (tuple(range(n)), tuple(range(m)))
        gens = list(zip(self.gens, self.paired_gens))
        seen = {ident}
        frontier = [ident]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = (perm_mul(g[0], x[0]), perm_mul(g[1], x[1]))
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        if len(seen) != self.order:
            raise ValueError(f"{self.label}: paired action is not faithful")
        return sorted(seen)

    def _verify_homomorphism(self, words=40, seed=0x5EED):
        import random
        rng = random.Random(seed)
        gens = list(zip(self.gens, self.paired_gens))
        lookup = dict(self.pairs)
        for _ in range(words):
            wn = tuple(range(self.degree))
            wm = tuple(range(self.paired_degree))
            for _ in range(rng.randrange(1, 12)):
                g = gens[rng.randrange(len(gens))]
                wn, wm = perm_mul(g[0], wn), perm_mul(g[1], wm)
            if lookup.get(wn) != wm:
                raise ValueError(f"{self.label}: homomorphism check failed")

    # -- queries ---------------------------------------------------------------

    def elements(self):
        """All (degree-n) elements; complete and duplicate-free."""
        return list(self.elements_n)

    def paired_cycle_types(self):
        """{(lambda_n, lambda_m): count} over all group elements."""
        out = {}
        for pn, pm in self.pairs:
            key = (cycle_type(pn), cycle_type(pm))
            out[key] = out.get(key, 0) + 1
        return out

    def orbit_partition(self, subgroup_perms, action="n"):
        """Sorted orbit sizes of a subgroup in the chosen action."""
        elems = set(self.elements_n)
        for g in subgroup_perms:
            if tuple(g) not in elems:
                raise ValueError("subgroup generator not in group")
        if action == "n":
            return orbits_of([tuple(g) for g in subgroup_perms], self.degree)
        lookup = dict(self.pairs)
        return orbits_of([lookup[tuple(g)] for g in subgroup_perms],
                         self.paired_degree)

    def paired_perm(self, perm_n):
        return dict(self.pairs)[tuple(perm_n)]

    def conjugacy_class_ids(self):
        """{element: class id}; classes computed by conjugation orbits."""
        if getattr(self, "_class_ids", None) is not None:
            return self._class_ids
        ids = {}
        next_id = 0
        for g in self.elements_n:
            if g in ids:
                continue
            orbit = {g}
            frontier = [g]
            while frontier:
                x = frontier.pop()
                for t in self.gens:
                    y = perm_mul(perm_mul(t, x), perm_inv(t))
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            for y in orbit:
                ids[y] = next_id
            next_id += 1
        self._class_ids = ids
        return ids

    def tame_fusion_residues(self, row_type):
        """Residues k mod e for which some row element g has g^k ~ g.

        ``row_type`` is a (lambda_n, lambda_m) pair; e = lcm(lambda_n) is the
        element order.  A cyclic tame inertia group generated by such g can
        occur at p only when p mod e lies in the returned set: a Frobenius
        lift must conjugate the inertia generator to its p-th power inside
        the group.
        """
        import math as _math
        lam_n, lam_m = row_type
        e = 1
        for part in lam_n:
            e = e * part // _math.gcd(e, part)
        ids = self.conjugacy_class_ids()
        allowed = set()
        for pn, pm in self.pairs:
            if cycle_type(pn) == lam_n and cycle_type(pm) == lam_m:
                cid = ids[pn]
                for k in range(1, e):
                    if _math.gcd(k, e) == 1:
                        q = pn
                        for _ in range(k - 1):
                            q = perm_mul(pn, q)
                        if ids[q] == cid:
                            allowed.add(k)
        return e, frozenset(allowed)

    # -- subgroup scans (for wild-table verification) ---------------------------

    @lru_cache(maxsize=None)
    def _mult_index(self):
        elems = self.elements_n
        index = {g: i for i, g in enumerate(elems)}
        return elems, index

    def two_generated_subgroups(self):
        """All distinct subgroups generated by at most two elements."""
        if getattr(self, "_two_gen_cache", None) is not None:
            return self._two_gen_cache
        elems = self.elements_n
        seen = set()
        out = []
        for a in elems:
            key = frozenset(closure([a], cap=self.order))
            if key not in seen:
                seen.add(key)
                out.append(sorted(key))
        for i, a in enumerate(elems):
            for b in elems[i + 1:]:
                key = frozenset(closure([a, b], cap=self.order))
                if key not in seen:
                    seen.add(key)
                    out.append(sorted(key))
        self._two_gen_cache = out
        return out

    def subgroups_by_type(self):
        """{iso key: [subgroup element lists]} over 2-generated subgroups."""
        if getattr(self, "_by_type_cache", None) is None:
            out = {}
            for sub in self.two_generated_subgroups():
                key = iso_type_key(sub)
                out.setdefault(key, []).append(sub)
            self._by_type_cache = out
        return self._by_type_cache


def iso_type_key(subgroup_elements):
    """Isomorphism invariant (order, element-order multiset, abelian flag).

    Distinguishes every subgroup type the ramification tables need (orders
    up to 24 inside the groups used here).
    """
    elems = list(subgroup_elements)
    orders = tuple(sorted(perm_order(g) for g in elems))
    lookup = set(elems)
    abelian = True
    for a in elems:
        for b in elems:
            if perm_mul(a, b) != perm_mul(b, a):
                abelian = False
                break
        if not abelian:
            break
    return (len(elems), orders, abelian)


#: iso keys for the subgroup labels used by the wild tables
ISO_KEYS = {
    "C2": (2, (1, 2), True),
    "C3": (3, (1, 3, 3), True),
    "C4": (4, (1, 2, 4, 4), True),
    "V": (4, (1, 2, 2, 2), True),
    "C5": (5, (1, 5, 5, 5, 5), True),
    "C6": (6, (1, 2, 3, 3, 6, 6), True),
    "S3": (6, (1, 2, 2, 2, 3, 3), False),
    "C7": (7, (1, 7, 7, 7, 7, 7, 7), True),
    "D4": (8, (1, 2, 2, 2, 2, 2, 4, 4), False),
    "D5": (10, (1, 2, 2, 2, 2, 2, 5, 5, 5, 5), False),
    "A4": (12, (1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3), False),
    "F20": (20, tuple(sorted([1] + [2] * 5 + [4] * 10 + [5] * 4)), False),
    "F21": (21, tuple(sorted([1] + [3] * 14 + [7] * 6)), False),
    "C7:C3": (21, tuple(sorted([1] + [3] * 14 + [7] * 6)), False),
}


# ----------------------------------------------------------------------------
# loading the shipped groups
# ----------------------------------------------------------------------------

def _asset_text(relpath):
    root = importlib.resources.files("fieldsieve") / "assets"
    return (root / relpath).read_text()


def _parse_group_file(text):
    meta = {}
    perms = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key == "perm":
            perms.append(tuple(int(x) for x in rest.split()))
        else:
            meta[key] = rest
    return meta, perms


_GROUP_FILES = {
    "GL3(2)": "groups/gl32.txt",
    "A5": "groups/a5.txt",
    "S5": "groups/s5.txt",
}

GROUP_ALIASES = {
    "GL3(2)": "GL3(2)", "PSL2(7)": "GL3(2)", "GL3(2)/PSL2(7)": "GL3(2)",
    "7T5": "GL3(2)", "8T37": "GL3(2)", "gl32": "GL3(2)",
    "A5": "A5", "PSL2(5)": "A5", "A5/PSL2(5)": "A5", "6T12": "A5", "a5": "A5",
    "S5": "S5", "PGL2(5)": "S5", "S5/PGL2(5)": "S5", "6T14": "S5", "s5": "S5",
}


@lru_cache(maxsize=None)
def load_group(label):
    """Load one of the shipped group actions by label (aliases accepted)."""
    label = GROUP_ALIASES[label]
    meta, perms = _parse_group_file(_asset_text(_GROUP_FILES[label]))
    return PermGroupAction(
        label=meta["label"],
        gens=perms,
        paired_subgroup_order=int(meta["paired_subgroup_order"]),
        paired_degree=int(meta["paired_degree"]),
        expected_order=int(meta["order"]),
    )
