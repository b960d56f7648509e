"""Hurwitz moves on reflection factorisations and their GF(2) shadow.

Two rewriting engines live here.

1. `pair_reduce` takes a factorisation of the identity into reflections
   of a finite-type Coxeter system and applies Hurwitz moves until the
   factors form consecutive equal pairs (t, t, u, u, ...).  One round:
   rotate a maximal-width factor to the end, concatenate minimal-length
   expressions w_i s_i w_i^{-1} of the others, locate (by the exchange
   property) the single letter whose deletion kills the product, and
   split by the letter position: the middle letter of a block lets that
   block slide to the end and pair with the last factor (length drops
   by 2); a letter inside a conjugating subword lets the last factor
   slide inward, replacing it by a reflection of strictly smaller width.
   (Length, total width) decreases lexicographically, so the loop
   terminates.

2. `transvection_normalize` is the analogous procedure one level down,
   for products of transvections v -> v + (v.d)d on GF(2)^{2g}: an
   identity-valued factor sequence is rewritten into consecutive equal
   pairs using braid moves, insertions of cancelling twist pairs, and
   insertions of seven-term lantern words; the basis vectors b_1..b_g
   are treated first, then a_g..a_1.  Every step lands in a trace that
   can be replayed and audited.

Hurwitz move convention, matching `apply_move(f, i, "right")`:
(a, b) -> (b, b^{-1} a b), i.e. the factor at position i (1-based) moves
right and is conjugated; "left" is the inverse move
(a, b) -> (a b a^{-1}, a).  In traces, "move" records are 1-based while
insertion and cancellation records use 0-based slice offsets.

Factorisation file format: one factor per line; reflection factors as
coordinate tuples ``(1,0,1,0,0)``, transvection factors as a sign token
followed by bits, ``+ 1 0 1 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .coxeter import (
    InternalError,
    identity_matrix,
    mat_col,
    mat_mul,
    mat_vec,
    mul_gen_right,
    positive_form,
    reflect_vec,
    reflection_lift,
    reflection_matrix,
    reflection_width,
    simple_root,
)


class NotIdentityError(ValueError):
    """The factorisation does not evaluate to the identity."""


@dataclass(frozen=True)
class ReflectionFactorization:
    system: object
    factors: tuple  # of Root

    def __len__(self):
        return len(self.factors)


def factorization_value(f):
    m = identity_matrix(f.system.rank)
    for r in f.factors:
        m = mat_mul(m, reflection_matrix(f.system, r).matrix)
    return m


def apply_move(f, i, direction):
    """Hurwitz move at 1-based position i, acting on factors (i, i+1)."""
    if not 1 <= i <= len(f.factors) - 1:
        raise IndexError(f"move position {i} out of range 1..{len(f.factors) - 1}")
    a, b = f.factors[i - 1], f.factors[i]
    if direction == "right":
        conj = positive_form(mat_vec(reflection_matrix(f.system, b).matrix, a.coords))
        pair = (b, conj)
    elif direction == "left":
        conj = positive_form(mat_vec(reflection_matrix(f.system, a).matrix, b.coords))
        pair = (conj, a)
    else:
        raise ValueError(f"direction must be 'right' or 'left', got {direction!r}")
    return ReflectionFactorization(
        f.system, f.factors[: i - 1] + pair + f.factors[i + 1:]
    )


def replay_moves(f, moves):
    for i, direction in moves:
        f = apply_move(f, i, direction)
    return f


def is_paired(factors):
    return len(factors) % 2 == 0 and all(
        factors[k] == factors[k + 1] for k in range(0, len(factors), 2)
    )


def random_scramble(f, rng, n_moves):
    """Apply n random Hurwitz moves; returns (factorisation, moves)."""
    moves = []
    for _ in range(n_moves):
        if len(f.factors) < 2:
            break
        i = rng.randrange(1, len(f.factors))
        direction = rng.choice(("right", "left"))
        f = apply_move(f, i, direction)
        moves.append((i, direction))
    return f, tuple(moves)


def _apply_letters(system, letters, base):
    v = simple_root(system, base).coords
    for s in reversed(letters):
        v = reflect_vec(system, system.index(s), v)
    return positive_form(v)


def _exchange_deletion(system, letters, target):
    """Lowest 1-based index whose deletion compensates the target reflection."""
    q = len(letters)
    roots = [None] * q
    p = identity_matrix(system.rank)
    for j in range(q - 1, -1, -1):
        i = system.index(letters[j])
        roots[j] = positive_form(mat_col(p, i))
        p = mul_gen_right(system, p, i)
    for j in range(q):
        if roots[j] == target:
            return j + 1
    raise InternalError("exchange deletion not found")


def pair_reduce(f, max_rounds=None):
    """Hurwitz-transform an identity factorisation into equal pairs.

    Returns (paired factorisation, move log); replaying the log on the
    input reproduces the output exactly.
    """
    system = f.system
    if factorization_value(f) != identity_matrix(system.rank):
        raise NotIdentityError("factorisation must evaluate to the identity")
    factors = list(f.factors)
    moves = []
    n_active = len(factors)

    def total_width():
        return sum(reflection_width(system, r) for r in factors[:n_active])

    if max_rounds is None:
        max_rounds = 4 * (n_active + total_width()) + 16
    rounds = 0

    def do_move(i, direction):
        nonlocal factors
        moved = apply_move(
            ReflectionFactorization(system, tuple(factors)), i, direction
        )
        factors = list(moved.factors)
        moves.append((i, direction))

    while n_active > 0:
        if is_paired(factors[:n_active]):
            break
        rounds += 1
        if rounds > max_rounds:
            raise InternalError("pair reduction exceeded its round cap")
        ws = [reflection_width(system, r) for r in factors[:n_active]]
        wmax = max(ws)
        p = max(i for i, w in enumerate(ws) if w == wmax) + 1  # rightmost maximal
        for _ in range(p % n_active):
            for i in range(1, n_active):
                do_move(i, "right")
        # a maximal-width factor now sits at position n_active
        blocks = []
        for r in factors[: n_active - 1]:
            word, base = reflection_lift(system, r)
            blocks.append(tuple(word) + (base,) + tuple(reversed(word)))
        letters = [s for b in blocks for s in b]
        target = factors[n_active - 1]
        j = _exchange_deletion(system, letters, target)
        acc = 0
        for bi, block in enumerate(blocks):
            if j <= acc + len(block):
                offset = j - acc - 1  # 0-based inside the block
                break
            acc += len(block)
        k = (len(block) - 1) // 2  # width of that factor
        if offset == k:
            # middle letter: slide the block factor right; it pairs with
            # the last factor and both leave the active region
            for i in range(bi + 1, n_active - 1):
                do_move(i, "right")
            if factors[n_active - 2] != factors[n_active - 1]:
                raise InternalError("paired factors disagree after middle-case shift")
            n_active -= 2
        else:
            word = block[:k]
            if offset < k:
                dest = bi + 1  # in front of the block
                expected = _apply_letters(system, word[:offset], word[offset])
            else:
                dest = bi + 2  # just behind the block
                rev = tuple(reversed(word))
                ridx = offset - k - 1
                expected = _apply_letters(
                    system, tuple(reversed(rev[ridx + 1:])), rev[ridx]
                )
            for i in range(n_active - 1, dest - 1, -1):
                do_move(i, "left")
            if factors[dest - 1] != expected:
                raise InternalError("slid factor disagrees with exchange prediction")
    out = ReflectionFactorization(f.system, tuple(factors))
    if not is_paired(out.factors):
        raise InternalError("pair reduction terminated unpaired")
    return out, tuple(moves)


# --- transvection factorisations over GF(2) ----------------------------------

@dataclass(frozen=True)
class TransvectionFactorization:
    g: int
    factors: tuple  # of (bits tuple of length 2g, sign +-1)

    def __post_init__(self):
        for bits, sign in self.factors:
            if len(bits) != 2 * self.g or not any(bits):
                raise ValueError("factors must be nonzero vectors of length 2g")
            if sign not in (1, -1):
                raise ValueError("sign must be +-1")

    def __len__(self):
        return len(self.factors)


def sym_pair(u, v):
    """Mod-2 intersection pairing in the basis a_1..a_g, b_1..b_g."""
    g = len(u) // 2
    return sum(u[i] * v[g + i] + u[g + i] * v[i] for i in range(g)) & 1


def transvection_matrix(delta):
    """Matrix of v -> v + (v.delta) delta on column vectors over GF(2)."""
    n = len(delta)
    cols = []
    for j in range(n):
        e = tuple(1 if k == j else 0 for k in range(n))
        c = sym_pair(e, delta)
        cols.append(tuple(e[k] ^ (c & delta[k]) for k in range(n)))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def transvection_value(f):
    """Product of the transvection matrices; signs are invisible mod 2."""
    m = gf2.identity(2 * f.g)
    for bits, _ in f.factors:
        m = gf2.mat_mul(m, transvection_matrix(bits))
    return m


def _t_apply(delta, v):
    if sym_pair(v, delta):
        return tuple(a ^ b for a, b in zip(v, delta))
    return v


def class_pairs_ok(factors):
    """Pairing predicate at the class level: factors 2i-1 and 2i agree."""
    return len(factors) % 2 == 0 and all(
        factors[k][0] == factors[k + 1][0] for k in range(0, len(factors), 2)
    )


def _lantern_word(d1, c2, c3):
    add = lambda *vs: tuple(sum(col) & 1 for col in zip(*vs))
    return (
        (add(d1, c2), -1),
        (add(d1, c3), -1),
        (add(c2, c3), -1),
        (d1, 1),
        (c2, 1),
        (c3, 1),
        (add(d1, c2, c3), 1),
    )


def apply_trace_record(factors, rec):
    """Apply one trace record to a list of (bits, sign) factors, in place."""
    kind = rec[0]
    if kind == "move":
        _, i, direction = rec
        a, b = factors[i - 1], factors[i]
        if direction == "right":
            factors[i - 1:i + 1] = [b, (_t_apply(b[0], a[0]), a[1])]
        elif direction == "left":
            factors[i - 1:i + 1] = [(_t_apply(a[0], b[0]), b[1]), a]
        else:
            raise ValueError(f"bad move direction {direction!r}")
    elif kind == "twist-insert":
        _, pos, bits = rec
        factors[pos:pos] = [(bits, -1), (bits, 1)]
    elif kind == "cancel":
        # sign-insensitive: removing two equal classes is trivial mod 2
        _, pos = rec
        if factors[pos][0] != factors[pos + 1][0]:
            raise InternalError("cancel record does not match an equal-class pair")
        del factors[pos:pos + 2]
    elif kind == "lantern-insert":
        _, pos, signed = rec
        factors[pos:pos] = list(signed)
    else:
        raise ValueError(f"unknown trace record {rec!r}")


def replay_trace(f, trace):
    """Re-run a normalisation trace; returns the final factorisation."""
    factors = list(f.factors)
    for rec in trace:
        apply_trace_record(factors, rec)
    return TransvectionFactorization(f.g, tuple(factors))


class _Normalizer:
    """Stateful rewriter implementing the basis-by-basis pairing passes."""

    def __init__(self, f):
        self.g = f.g
        self.factors = list(f.factors)
        self.trace = []
        self.n_active = len(self.factors)

    # -- primitive rewrites, each appended to the trace -----------------------

    def _record(self, rec):
        apply_trace_record(self.factors, rec)
        self.trace.append(rec)

    def move(self, i, direction):
        self._record(("move", i, direction))

    def twist_insert(self, pos, bits):
        self._record(("twist-insert", pos, bits))
        self.n_active += 2

    def cancel(self, pos):
        self._record(("cancel", pos))
        self.n_active -= 2

    def lantern_insert(self, pos, d1, c2, c3):
        self._record(("lantern-insert", pos, _lantern_word(d1, c2, c3)))
        self.n_active += 7

    # -- composite motions -----------------------------------------------------

    def move_right_unchanged(self, src, dest):
        """Slide the factor at 1-based src to dest > src, conjugating passed ones."""
        for i in range(src, dest):
            self.move(i, "left")

    def move_left_unchanged(self, src, dest):
        """Slide the factor at 1-based src to dest < src, conjugating passed ones."""
        for i in range(src - 1, dest - 1, -1):
            self.move(i, "right")

    def extract_pair(self, pos):
        """Move the equal pair at 1-based (pos, pos+1) past the active region."""
        if self.factors[pos - 1][0] != self.factors[pos][0]:
            raise InternalError("extract_pair on unequal classes")
        while pos + 1 < self.n_active:
            self.move(pos + 1, "right")
            self.move(pos, "right")
            pos += 1
        self.n_active -= 2

    # -- the passes ------------------------------------------------------------

    def pairing_with(self, v):
        return [sym_pair(bits, v) for bits, _ in self.factors[: self.n_active]]

    def beta_pass(self, b):
        """Pair off all factors pairing oddly with one isotropic basis vector.

        Partition them to the front, make the front block pairwise
        orthogonal by merging intersecting factors, then either extract a
        ready pair (block of two) or insert a cancelling twist pair along b
        and run the cascade that leaves exactly one equal pair in front.
        """
        while True:
            pr = self.pairing_with(b)
            site = next(
                (i for i in range(len(pr) - 1) if pr[i] == 0 and pr[i + 1] == 1),
                None,
            )
            if site is None:
                break
            self.move(site + 1, "left")
        n1 = sum(self.pairing_with(b))
        while True:
            blk = [bits for bits, _ in self.factors[:n1]]
            hit = None
            for j in range(1, n1):
                for i in range(j - 1, -1, -1):
                    if sym_pair(blk[i], blk[j]):
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                break
            i, j = hit
            self.move_left_unchanged(j + 1, i + 2)
            self.move(i + 1, "left")  # (d_i, d_j) -> (d_i + d_j, d_i)
            self.move_right_unchanged(i + 1, n1)  # expel the merged class
            n1 -= 1
        if n1 == 0:
            return
        if n1 % 2:
            raise InternalError("odd-pairing block has odd size")
        if n1 == 2:
            if self.factors[0][0] != self.factors[1][0]:
                raise InternalError("orthogonal two-element block is not a pair")
            self.extract_pair(1)
            return
        self.twist_insert(0, b)
        # [b-, b+, d1, ..., dn1, ...]
        self.move(2, "left")  # -> [b-, d1+b, b+, d2, ...]
        self.move(2, "left")  # -> [b-, d1, d1+b, d2, ...]
        self.move_right_unchanged(3, n1 + 2)  # -> [b-, d1, d2', .., dn1', d1+b, ..]
        self.move_right_unchanged(1, n1 + 2)  # -> [d1+b, d2', .., dn1', d1, b-, ..]
        for _ in range(n1 - 1):
            self.move_right_unchanged(2, n1 + 1)
        # -> [d1+b, d1+b, (parked d's), b-, ...]
        if self.factors[0][0] != self.factors[1][0]:
            raise InternalError("cascade did not terminate in an equal pair")
        self.extract_pair(1)

    def alpha_pass(self, a):
        """Pair off the isotropic-span factors pairing oddly with a.

        All active classes lie in the isotropic span by now, so braid
        moves are free transpositions.  Lantern insertions lower the
        dimension of the span of the odd factors to at most 2, at which
        point each class occurs evenly and is paired off directly.
        """
        while True:
            odd = [
                (i, self.factors[i][0])
                for i in range(self.n_active)
                if sym_pair(self.factors[i][0], a)
            ]
            if not odd:
                return
            classes = [bits for _, bits in odd]
            if gf2.rank(classes) >= 3:
                d1 = classes[0]
                d2 = next(c for c in classes if c != d1)
                d3 = next(c for c in classes if gf2.rank([d1, d2, c]) == 3)
                i1 = next(i for i, c in odd if c == d1)
                i2 = next(i for i, c in odd if c == d2)
                i3 = next(i for i, c in odd if c == d3)
                c2 = tuple(x ^ y for x, y in zip(d1, d2))
                c3 = tuple(x ^ y for x, y in zip(d1, d3))
                self.lantern_insert(0, d1, c2, c3)
                # layout: d2-, d3-, (c2+c3)-, d1, c2, c3, (d1+c2+c3), originals
                self.move_left_unchanged(i2 + 8, 2)
                self.cancel(0)
                self.move_left_unchanged(i3 + 6, 2)
                self.cancel(0)
                self.move_left_unchanged(i1 + 6, 3)
                self.extract_pair(2)
                continue
            counts = {}
            for _, c in odd:
                counts[c] = counts.get(c, 0) + 1
            if any(v % 2 for v in counts.values()):
                raise InternalError("odd multiplicity in a low-dimensional block")
            first = odd[0][0]
            mate = next(i for i, c in odd[1:] if c == odd[0][1])
            self.move_left_unchanged(mate + 1, first + 2)
            self.extract_pair(first + 1)

    def run(self):
        g = self.g
        basis = lambda k: tuple(1 if i == k else 0 for i in range(2 * g))
        if not class_pairs_ok(self.factors[: self.n_active]):
            for k in range(g, 2 * g):  # b_1 .. b_g
                self.beta_pass(basis(k))
            for k in range(g - 1, -1, -1):  # a_g .. a_1
                self.alpha_pass(basis(k))
            if self.n_active:
                raise InternalError("active factors remained after all passes")
        return TransvectionFactorization(g, tuple(self.factors)), tuple(self.trace)


def transvection_normalize(f):
    """Rewrite an identity-valued transvection factorisation into pairs.

    Returns (factorisation, trace).  The trace records every braid move,
    twist insertion, cancellation and lantern insertion, so the rewrite
    can be replayed and audited step by step.
    """
    if f.g < 2:
        raise ValueError("normalisation needs genus at least 2")
    if transvection_value(f) != gf2.identity(2 * f.g):
        raise NotIdentityError("transvection factorisation must have identity value")
    out, trace = _Normalizer(f).run()
    if not class_pairs_ok(out.factors):
        raise InternalError("normalisation terminated unpaired")
    return out, trace


def random_transvection_scramble(f, rng, n_moves):
    """Apply n random class-level braid moves (value-preserving)."""
    factors = list(f.factors)
    for _ in range(n_moves):
        if len(factors) < 2:
            break
        i = rng.randrange(1, len(factors))
        apply_trace_record(factors, ("move", i, rng.choice(("right", "left"))))
    return TransvectionFactorization(f.g, tuple(factors))


# --- file ingestion -----------------------------------------------------------

def load_reflection_factorization(system, path):
    roots = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            coords = tuple(int(x) for x in line.strip("()").replace(",", " ").split())
            roots.append(positive_form(coords))
    return ReflectionFactorization(system, tuple(roots))


def load_transvection_factorization(g, path):
    factors = []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            sign = {"+": 1, "-": -1}[parts[0]]
            bits = tuple(int(x) for x in parts[1:])
            factors.append((bits, sign))
    return TransvectionFactorization(g, tuple(factors))
