"""Exact integer model of Coxeter systems and their reflection groups.

A Coxeter system is a finite set of generators together with a symmetric
table of pairwise orders m(s,t) with m(s,s) = 1; the group W is generated
by involutions subject to the braid relations <st>^m = <ts>^m.  All
computations here happen in the geometric representation on the root
lattice: the simple reflection s acts on coordinate vectors by

    s(v) = v - <a_s, v> a_s,

where <a_s, .> is the row of the doubled bilinear form, with integer
entries 2, 0, -1, -2 according to m(s,t) = 1, 2, 3, infinity.  Orders are
restricted to {1, 2, 3, infinity} (every system we need is simply laced),
which keeps the representation integral and faithful and turns the word
problem, lengths, descents, Strong Exchange and root enumeration into
exact integer linear algebra, uniformly for finite and infinite groups.

Conventions
-----------
* matrices are tuples of row tuples; column j is the image of the j-th
  simple root; products act on column vectors,
* Python ints are arbitrary precision, so matrix entries can never
  silently wrap,
* a root is stored in positive form (all coordinates >= 0),
* a reduced word is a plain tuple of generator names,
* ties (descent choice, Strong Exchange index) are broken towards the
  lowest generator index for reproducibility.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

INFINITE = 0  # encoding of m(s,t) = infinity in the order table

DEFAULT_ROOT_CAP = 100_000

MAX_RANK = 16

_STRIP_LIMIT = 1_000_000


class UnsupportedOrderError(ValueError):
    """An order m(s,t) outside {1, 2, 3, infinity} was supplied."""


class CapExceededError(RuntimeError):
    """A closure computation exceeded its cap (non-finite type, or misuse)."""

    def __init__(self, message, cap):
        super().__init__(f"{message} (cap={cap})")
        self.cap = cap


class NotShorteningError(ValueError):
    """Strong Exchange was asked for a reflection that does not shorten."""


class InternalError(RuntimeError):
    """An invariant the theory guarantees was violated; implementation bug."""


@dataclass(frozen=True)
class CoxeterSystem:
    """Generator names plus the symmetric order table (0 encodes infinity)."""

    generators: tuple
    orders: tuple
    preset_tag: str | None = field(default=None, compare=False)

    def __post_init__(self):
        names = self.generators
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        if len(names) > MAX_RANK:
            raise ValueError(f"rank {len(names)} exceeds supported maximum {MAX_RANK}")
        m = self.orders
        n = len(names)
        if len(m) != n or any(len(row) != n for row in m):
            raise ValueError("order table must be square of the generator count")
        for i in range(n):
            if m[i][i] != 1:
                raise ValueError("diagonal orders must be 1")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise ValueError("order table must be symmetric")
                if i != j and m[i][j] not in (2, 3, INFINITE):
                    raise UnsupportedOrderError(
                        f"order m({names[i]},{names[j]}) = {m[i][j]} is not supported; "
                        "use 2, 3 or 0 (infinity)"
                    )

    @property
    def rank(self):
        return len(self.generators)

    def index(self, s):
        try:
            return self.generators.index(s)
        except ValueError:
            raise KeyError(f"unknown generator {s!r}") from None

    def order(self, s, t):
        return self.orders[self.index(s)][self.index(t)]


@lru_cache(maxsize=None)
def cartan_rows(system):
    """Rows <a_s, .> of the doubled bilinear form, as integer tuples."""
    to_entry = {1: 2, 2: 0, 3: -1, INFINITE: -2}
    return tuple(
        tuple(to_entry[m] for m in row) for row in system.orders
    )


@dataclass(frozen=True)
class WeylElement:
    """Group element as the integer matrix of its root-lattice action."""

    matrix: tuple

    @property
    def rank(self):
        return len(self.matrix)

    def __mul__(self, other):
        return WeylElement(mat_mul(self.matrix, other.matrix))

    def is_identity(self):
        return self.matrix == identity_matrix(len(self.matrix))


@dataclass(frozen=True, order=True)
class Root:
    """Positive-form coordinate vector over the simple roots."""

    coords: tuple

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("the zero vector is not a root")
        if any(c < 0 for c in self.coords):
            raise ValueError("roots are stored in positive form")


# --- exact integer matrices -------------------------------------------------

@lru_cache(maxsize=None)
def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_vec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def mat_col(m, j):
    return tuple(row[j] for row in m)


def invert_unimodular(m):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(m)
    work = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(m)
    ]
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv = Fraction(1) / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    out = []
    for row in work:
        ints = []
        for x in row[n:]:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            ints.append(int(x))
        out.append(tuple(ints))
    return tuple(out)


def mul_gen_right(system, m, s_idx):
    """m times the simple reflection at index s_idx (column operations)."""
    c = cartan_rows(system)[s_idx]
    return tuple(
        tuple(row[j] - c[j] * row[s_idx] for j in range(len(row))) for row in m
    )


def mul_gen_left(system, s_idx, m):
    """Simple reflection at index s_idx times m (a single row operation)."""
    c = cartan_rows(system)[s_idx]
    new_row = tuple(
        m[s_idx][j] - sum(c[k] * m[k][j] for k in range(len(m)))
        for j in range(len(m))
    )
    return tuple(new_row if i == s_idx else m[i] for i in range(len(m)))


def reflect_vec(system, s_idx, v):
    """Apply the simple reflection at index s_idx to a coordinate vector."""
    c = cartan_rows(system)[s_idx]
    coeff = sum(x * y for x, y in zip(c, v))
    return tuple(x - coeff if i == s_idx else x for i, x in enumerate(v))


def positive_form(coords):
    """Normalise a root vector to its positive representative."""
    if all(c >= 0 for c in coords) and any(coords):
        return Root(tuple(coords))
    if all(c <= 0 for c in coords) and any(coords):
        return Root(tuple(-c for c in coords))
    raise InternalError(f"root dichotomy violated for {coords}")


# --- basic operations -------------------------------------------------------

def simple_reflection(system, s):
    """The generator s as a WeylElement (an involutive integer matrix)."""
    i = system.index(s)
    return WeylElement(mul_gen_right(system, identity_matrix(system.rank), i))


def simple_root(system, s):
    return Root(tuple(1 if j == system.index(s) else 0 for j in range(system.rank)))


def evaluate(system, letters):
    """Product of simple reflections named by `letters`, left to right."""
    m = identity_matrix(system.rank)
    for s in letters:
        m = mul_gen_right(system, m, system.index(s))
    return WeylElement(m)


def _lowest_left_descent(system, minv):
    # s is a left descent of w iff w^{-1}(a_s) is negative, i.e. column s
    # of the inverse matrix has all entries <= 0.
    n = len(minv)
    for s in range(n):
        if all(minv[i][s] <= 0 for i in range(n)):
            return s
    return None


def reduced_word(system, w):
    """The reduced word obtained by stripping lowest-index left descents."""
    m = w.matrix
    minv = invert_unimodular(m)
    ident = identity_matrix(system.rank)
    letters = []
    while m != ident:
        s = _lowest_left_descent(system, minv)
        if s is None:
            raise InternalError("non-identity element with no left descent")
        letters.append(system.generators[s])
        m = mul_gen_left(system, s, m)
        minv = mul_gen_right(system, minv, s)
        if len(letters) > _STRIP_LIMIT:
            raise InternalError("descent stripping failed to terminate")
    return tuple(letters)


def length(system, w):
    """Coxeter length, computed by repeated left-descent stripping."""
    return len(reduced_word(system, w))


def quasireflection_root(system, w, s):
    """The positive root naming the quasireflection w s w^{-1}."""
    return positive_form(mat_col(w.matrix, system.index(s)))


def reflection_matrix(system, root):
    """The reflection along `root` as a WeylElement.

    Valid for any root of the system (unit vectors under the doubled form);
    rejects vectors with <v, v> != 2.
    """
    c = cartan_rows(system)
    v = root.coords
    cv = tuple(sum(row[k] * v[k] for k in range(len(v))) for row in c)
    norm = sum(x * y for x, y in zip(v, cv))
    if norm != 2:
        raise ValueError(f"{v} is not a unit root vector (<v,v> = {norm})")
    n = len(v)
    return WeylElement(tuple(
        tuple((1 if i == j else 0) - v[i] * cv[j] for j in range(n))
        for i in range(n)
    ))


def _resolve_subset(system, subset):
    if subset is None:
        return tuple(range(system.rank))
    return tuple(system.index(s) for s in subset)


def positive_roots(system, subset=None, cap=DEFAULT_ROOT_CAP):
    """Closure of the chosen simple roots under their simple reflections.

    Returns the set of positive representatives.  Exceeding `cap` raises
    CapExceededError, which signals a non-finite (sub)system.
    """
    idxs = _resolve_subset(system, subset)
    found = {simple_root(system, system.generators[i]) for i in idxs}
    queue = sorted(found)
    while queue:
        nxt = []
        for r in queue:
            for i in idxs:
                img = positive_form(reflect_vec(system, i, r.coords))
                if img not in found:
                    found.add(img)
                    if len(found) > cap:
                        raise CapExceededError(
                            "positive-root closure is larger than the cap", cap
                        )
                    nxt.append(img)
        queue = sorted(nxt)
    return frozenset(found)


def longest_element(system, subset=None, cap=DEFAULT_ROOT_CAP):
    """Longest element of a finite-type (sub)system, with a reduced word.

    Greedy ascent: repeatedly multiply by the lowest-index generator whose
    simple root is still sent to a positive root.  Finiteness is validated
    through the positive-root closure first, so the cap also guards this.
    """
    roots = positive_roots(system, subset, cap)
    idxs = _resolve_subset(system, subset)
    m = identity_matrix(system.rank)
    letters = []
    while True:
        s = next(
            (i for i in idxs if all(x >= 0 for x in mat_col(m, i))),
            None,
        )
        if s is None:
            break
        letters.append(system.generators[s])
        m = mul_gen_right(system, m, s)
        if len(letters) > len(roots):
            raise InternalError("greedy ascent exceeded the root count")
    if len(letters) != len(roots):
        raise InternalError("longest element shorter than the root count")
    return WeylElement(m), tuple(letters)


def strong_exchange(system, word, t, _value=None):
    """Index j (1-based, lowest) whose deletion from `word` compensates t.

    `word` is an expression of w (the public contract passes reduced words,
    but the search itself is valid for any positive expression, per the
    exchange property).  Requires that the reflection along the root t
    shortens w; otherwise NotShorteningError.
    """
    w = _value if _value is not None else evaluate(system, word)
    image = mat_vec(w.matrix, t.coords)
    if all(x >= 0 for x in image):
        raise NotShorteningError(
            f"reflection along {t.coords} does not shorten this element"
        )
    q = len(word)
    # roots_j = (s_q ... s_{j+1})(a_{s_j}); build suffix products right to left.
    roots = [None] * q
    p = identity_matrix(system.rank)
    for j in range(q - 1, -1, -1):
        i = system.index(word[j])
        roots[j] = positive_form(mat_col(p, i))
        p = mul_gen_right(system, p, i)
    for j in range(q):
        if roots[j] == t:
            return j + 1
    raise InternalError("no deletable letter found despite shortening reflection")


# --- width of reflections (minimal conjugating length) ----------------------

@lru_cache(maxsize=None)
def root_search_tree(system, cap=DEFAULT_ROOT_CAP):
    """BFS over positive roots: distances to the simple roots and parents.

    dist[r] is the width of the reflection named by r (the minimal l(w)
    over representations w s w^{-1}); parent[r] = (generator index, root)
    one reflection step closer, or None at a simple root.
    """
    dist = {}
    parent = {}
    queue = []
    for i in range(system.rank):
        r = simple_root(system, system.generators[i])
        dist[r] = 0
        parent[r] = None
        queue.append(r)
    head = 0
    while head < len(queue):
        r = queue[head]
        head += 1
        for i in range(system.rank):
            img = positive_form(reflect_vec(system, i, r.coords))
            if img not in dist:
                dist[img] = dist[r] + 1
                parent[img] = (i, r)
                queue.append(img)
                if len(dist) > cap:
                    raise CapExceededError("root search tree exceeded the cap", cap)
    return dist, parent


def reflection_width(system, root):
    dist, _ = root_search_tree(system)
    return dist[root]


def reflection_lift(system, root):
    """Minimal-width representation of a reflection: (word, generator).

    Returns letters w = (s_1 ... s_k) and a generator s with
    w(a_s) = root and k equal to the width.
    """
    dist, parent = root_search_tree(system)
    if root not in dist:
        raise ValueError(f"{root.coords} is not a root of this system")
    letters = []
    cur = root
    while parent[cur] is not None:
        i, prev = parent[cur]
        letters.append(system.generators[i])
        cur = prev
    base = system.generators[cur.coords.index(1)]
    return tuple(letters), base


# --- presets ----------------------------------------------------------------

def _system_from_edges(names, edges, tag):
    n = len(names)
    pos = {s: i for i, s in enumerate(names)}
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    for a, b in edges:
        m[pos[a]][pos[b]] = 3
        m[pos[b]][pos[a]] = 3
    return CoxeterSystem(tuple(names), tuple(tuple(r) for r in m), tag)


def _path(names):
    return [(names[i], names[i + 1]) for i in range(len(names) - 1)]


def preset(name):
    """Named system: A2..A9, D4..D6, E6, E7, Sg:1..Sg:6."""
    if name.startswith("A") and name[1:].isdigit():
        n = int(name[1:])
        if 2 <= n <= 9:
            names = [f"s{i}" for i in range(1, n + 1)]
            return _system_from_edges(names, _path(names), name)
    if name.startswith("D") and name[1:].isdigit():
        n = int(name[1:])
        if 4 <= n <= 6:
            names = [f"s{i}" for i in range(1, n + 1)]
            edges = _path(names[:-1]) + [(names[-3], names[-1])]
            return _system_from_edges(names, edges, name)
    if name in ("E6", "E7"):
        lo = 2 if name == "E6" else 1
        names = [f"s{i}" for i in range(lo, 7)] + ["s0"]
        edges = _path(names[:-1]) + [("s4", "s0")]
        return _system_from_edges(names, edges, name)
    if name.startswith("Sg:") and name[3:].isdigit():
        g = int(name[3:])
        if g == 1:
            names = ["s1", "s2"]
            return _system_from_edges(names, _path(names), "S1")
        if 2 <= g <= 6:
            names = [f"s{i}" for i in range(1, 2 * g + 1)] + ["s0"]
            edges = _path(names[:-1]) + [("s4", "s0")]
            return _system_from_edges(names, edges, f"S{g}")
    raise ValueError(f"unknown preset {name!r}")


def sg_system(g):
    """The mapping-class Coxeter system on 2g+1 generators (A2 for g=1)."""
    return preset(f"Sg:{g}")


def parse_system(text):
    """Parse a preset name or an explicit JSON system (0 encodes infinity)."""
    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
        try:
            gens = tuple(data["generators"])
            orders = tuple(tuple(int(x) for x in row) for row in data["orders"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed system JSON: {exc}") from exc
        return CoxeterSystem(gens, orders)
    return preset(text)
