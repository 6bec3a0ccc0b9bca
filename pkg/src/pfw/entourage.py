"""C-ideal algebra on frame pairs, Weil entourages, and quasi-uniformities.

A C-ideal of L1 x L2 is stored as a bit-matrix: `rows[i]` is the bitmask of
right-hand elements j with (i, j) in the ideal.  Saturation alternates
down-closure with row- and column-join closure until a fixpoint; filters are
finite generator lists compared through their minimum (the intersection of
all generators).
"""

from __future__ import annotations

from .caps import Caps, DEFAULT_CAPS
from .congruence import relative_congruence_frame, extend_hom
from .errors import NotALattice, PreconditionError
from .lattice import FiniteFrame, FrameHom, Sublattice, subframe_generated


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class CIdeal:
    """A saturated down-set of L1 x L2 (axes always included)."""

    __slots__ = ("left", "right", "rows", "_hash")

    def __init__(self, left: FiniteFrame, right: FiniteFrame, rows):
        self.left = left
        self.right = right
        self.rows = tuple(rows)
        if len(self.rows) != left.n:
            raise NotALattice("row count must match the left frame")
        self._hash = hash((left, right, self.rows))

    def contains(self, i, j):
        return bool((self.rows[i] >> j) & 1)

    def pairs(self):
        for i, row in enumerate(self.rows):
            for j in _bits(row):
                yield i, j

    def pair_count(self):
        return sum(row.bit_count() for row in self.rows)

    def subset(self, other: "CIdeal"):
        return all(not (r & ~o) for r, o in zip(self.rows, other.rows))

    def intersect(self, other: "CIdeal"):
        return CIdeal(self.left, self.right, (r & o for r, o in zip(self.rows, other.rows)))

    def join(self, other: "CIdeal"):
        return CIdeal(
            self.left, self.right,
            _saturate(self.left, self.right, [r | o for r, o in zip(self.rows, other.rows)]),
        )

    def inverse(self) -> "CIdeal":
        rows = [0] * self.right.n
        for i, row in enumerate(self.rows):
            for j in _bits(row):
                rows[j] |= 1 << i
        return CIdeal(self.right, self.left, rows)

    def diagonal(self):
        """Elements a with (a,a) in the ideal (left = right only)."""
        return [a for a in range(self.left.n) if self.contains(a, a)]

    def is_cideal(self):
        """Literal check of the down-set and join-closure conditions."""
        lf, rf = self.left, self.right
        for i in range(lf.n):
            row = self.rows[i]
            if not row or rf.down_idx[rf.join_all(_bits(row))] != row:
                return False
        for j in range(rf.n):
            col = [i for i in range(lf.n) if self.contains(i, j)]
            if col and not self.contains(lf.join_all(col), j):
                return False
            for i in col:
                for i2 in _bits(lf.down_idx[i]):
                    if not self.contains(i2, j):
                        return False
        return self.rows[lf.zero] == (1 << rf.n) - 1 and all(
            self.contains(i, rf.zero) for i in range(lf.n)
        )

    def __eq__(self, other):
        return (
            isinstance(other, CIdeal)
            and self.left == other.left
            and self.right == other.right
            and self.rows == other.rows
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CIdeal({self.pair_count()} pairs)"


def _saturate(left: FiniteFrame, right: FiniteFrame, rows):
    """Alternate down-closure with row/column join-closure to a fixpoint."""
    rows = list(rows)
    full_r = (1 << right.n) - 1
    rows[left.zero] = full_r
    zero_bit = 1 << right.zero
    for i in range(left.n):
        rows[i] |= zero_bit
    ldown = left.down_idx
    rdown = right.down_idx
    changed = True
    while changed:
        changed = False
        for i in range(left.n):
            row = rows[i]
            if row:
                closed = rdown[right.join_all(_bits(row))]
                if closed != row:
                    rows[i] = closed
                    changed = True
        for i in range(left.n):
            row = rows[i]
            for i2 in _bits(ldown[i]):
                if rows[i2] | row != rows[i2]:
                    rows[i2] |= row
                    changed = True
        for j in range(right.n):
            col = [i for i in range(left.n) if (rows[i] >> j) & 1]
            top = left.join_all(col)
            if not (rows[top] >> j) & 1:
                rows[top] |= 1 << j
                changed = True
    return tuple(rows)


def cideal_generated(left: FiniteFrame, right: FiniteFrame, seed_pairs) -> CIdeal:
    """Least C-ideal containing the seed pairs."""
    rows = [0] * left.n
    for i, j in seed_pairs:
        rows[i] |= 1 << j
    return CIdeal(left, right, _saturate(left, right, rows))


def oplus(left: FiniteFrame, right: FiniteFrame, a, b) -> CIdeal:
    """The least C-ideal containing (a, b): its down-set together with the axes."""
    down_b = right.down_idx[b]
    zero_bit = 1 << right.zero
    rows = []
    for i in range(left.n):
        row = down_b if left.le(i, a) else 0
        rows.append(row | zero_bit)
    rows[left.zero] = (1 << right.n) - 1
    return CIdeal(left, right, rows)


def bottom_cideal(frame: FiniteFrame) -> CIdeal:
    return oplus(frame, frame, frame.zero, frame.zero)


def top_cideal(frame: FiniteFrame) -> CIdeal:
    return oplus(frame, frame, frame.one, frame.one)


def compose(a: CIdeal, b: CIdeal) -> CIdeal:
    """Relational composition through nonzero middles, saturated."""
    if a.left != b.left or a.right != b.right or a.left != a.right:
        raise NotALattice("composition needs C-ideals on a common frame")
    frame = a.left
    zero = frame.zero
    rows = [0] * frame.n
    for x in range(frame.n):
        acc = 0
        for c in _bits(a.rows[x]):
            if c != zero:
                acc |= b.rows[c]
        rows[x] = acc
    return CIdeal(frame, frame, _saturate(frame, frame, rows))


def pervin_entourage(frame: FiniteFrame, r) -> CIdeal:
    """The basic entourage at r: (x,y) belongs iff x <= r or y <= r*.

    Always a C-ideal; an entourage exactly when r is complemented.
    """
    star = frame.pseudocomplement(r)
    full = (1 << frame.n) - 1
    down_star = frame.down_idx[star]
    rows = [full if frame.le(i, r) else down_star for i in range(frame.n)]
    return CIdeal(frame, frame, rows)


def entourage_report(e: CIdeal) -> dict:
    """Entourage predicates: diagonal cover, transitivity, finiteness, symmetry."""
    if e.left != e.right:
        raise NotALattice("entourage predicates need a square C-ideal")
    frame = e.left
    diag = e.diagonal()
    is_entourage = frame.join_all(diag) == frame.one
    square = compose(e, e)
    contained_in_square = e.subset(square) if is_entourage else None
    is_transitive = square == e
    # general finite-join definition: greedily shrink the diagonal to a cover
    finite_cover = None
    if is_entourage:
        cover = [a for a in diag if a != frame.zero]
        for a in list(cover):
            trial = [c for c in cover if c != a]
            if frame.join_all(trial) == frame.one:
                cover = trial
        if frame.join_all(cover) == frame.one:
            finite_cover = tuple(cover)
    is_finite = finite_cover is not None
    if is_finite != is_entourage:
        raise NotALattice("diagonal shortcut disagrees with the cover search")
    return {
        "is_entourage": is_entourage,
        "is_transitive": is_transitive,
        "contained_in_square": contained_in_square,
        "is_finite": is_finite,
        "finite_cover": finite_cover,
        "is_symmetric": e == e.inverse(),
    }


def uniformly_below(frame: FiniteFrame, basis) -> dict:
    """The two witness relations and the subsets they reconstruct.

    b is uniformly below a (left version) when some basis member A satisfies
    A . (b+b) <= (a+a); the right version composes on the other side.
    """
    basis = list(basis)
    squares = {a: oplus(frame, frame, a, a) for a in range(frame.n)}
    rel1, rel2 = set(), set()
    for b in range(frame.n):
        sq_b = squares[b]
        left_comp = [compose(e, sq_b) for e in basis]
        right_comp = [compose(sq_b, e) for e in basis]
        for a in range(frame.n):
            sq_a = squares[a]
            if any(c.subset(sq_a) for c in left_comp):
                rel1.add((b, a))
            if any(c.subset(sq_a) for c in right_comp):
                rel2.add((b, a))
    part1 = tuple(
        a for a in range(frame.n)
        if frame.join_all(b for b, a2 in rel1 if a2 == a) == a
    )
    part2 = tuple(
        a for a in range(frame.n)
        if frame.join_all(b for b, a2 in rel2 if a2 == a) == a
    )

    def is_subframe(part):
        s = set(part)
        return (
            frame.zero in s
            and frame.one in s
            and all(frame.meet(x, y) in s and frame.join(x, y) in s for x in s for y in s)
        )

    return {
        "rel1": rel1,
        "rel2": rel2,
        "part1": part1,
        "part2": part2,
        "part1_subframe": is_subframe(part1),
        "part2_subframe": is_subframe(part2),
    }


class QuasiUniformity:
    """A filter of entourages given by finitely many generators.

    The basis is the generator list plus the total intersection, which is the
    filter's minimum; membership and comparisons reduce to it.
    """

    __slots__ = ("frame", "generators", "basis", "minimum", "_hash")

    def __init__(self, frame: FiniteFrame, generators, validate=True):
        generators = list(generators)
        if not generators:
            generators = [top_cideal(frame)]
        minimum = generators[0]
        for g in generators[1:]:
            minimum = minimum.intersect(g)
        basis = sorted({*generators, minimum}, key=lambda c: c.rows)
        self.frame = frame
        self.generators = tuple(sorted(set(generators), key=lambda c: c.rows))
        self.basis = tuple(basis)
        self.minimum = minimum
        self._hash = hash((frame, self.basis))
        if validate:
            report = self.qu_report()
            failed = [k for k in ("qu1", "qu2", "qu3", "all_entourages") if not report[k]]
            if failed:
                raise PreconditionError(f"not a quasi-uniformity: {failed} fail")

    def contains(self, e: CIdeal):
        return self.minimum.subset(e)

    def filter_eq(self, other: "QuasiUniformity"):
        return all(other.contains(g) for g in self.basis) and all(
            self.contains(g) for g in other.basis
        )

    def uniformly_below_report(self):
        # composition is monotone in both arguments, so the filter minimum
        # witnesses whenever any filter member does; the suite cross-checks
        # this against the full-basis computation
        return uniformly_below(self.frame, [self.minimum])

    def qu_report(self):
        """Literal checks of the filter-basis, square-refinement and
        generation conditions, plus inverse-closure for uniformities."""
        ents = [entourage_report(e) for e in self.basis]
        qu1 = all(
            any(b.subset(e1.intersect(e2)) for b in self.basis)
            for e1 in self.basis
            for e2 in self.basis
        )
        qu2 = all(
            any(compose(f, f).subset(e) for f in self.basis) for e in self.basis
        )
        ub = self.uniformly_below_report()
        generated = subframe_generated(self.frame, set(ub["part1"]) | set(ub["part2"]))
        qu3 = len(generated.members) == self.frame.n
        qu4 = all(self.contains(g.inverse()) for g in self.basis)
        return {
            "all_entourages": all(r["is_entourage"] for r in ents),
            "qu1": qu1,
            "qu2": qu2,
            "qu3": qu3,
            "qu4": qu4,
            "transitive": all(
                any(f.subset(e) and entourage_report(f)["is_transitive"] for f in self.basis)
                for e in self.basis
            ),
            "totally_bounded": all(r["is_finite"] for r in ents),
        }

    def is_uniformity(self):
        return all(self.contains(g.inverse()) for g in self.generators)

    def __eq__(self, other):
        return (
            isinstance(other, QuasiUniformity)
            and self.frame == other.frame
            and self.basis == other.basis
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"QuasiUniformity({len(self.basis)} basis entourages)"


def filter_from_sublattice(frame: FiniteFrame, members, validate=True) -> QuasiUniformity:
    """The filter generated by the basic entourages at the given complemented
    elements."""
    members = sorted(set(members) | {frame.zero, frame.one})
    for r in members:
        if frame.complement_of(r) is None:
            raise PreconditionError(f"{frame.names[r]} is not complemented")
    return QuasiUniformity(frame, [pervin_entourage(frame, r) for r in members], validate)


def image_cideal(h: FrameHom, e: CIdeal) -> CIdeal:
    """The C-ideal generated by the pointwise image of e."""
    if e.left != h.dom or e.right != h.dom:
        raise NotALattice("image needs a C-ideal on the hom's domain")
    rows = [0] * h.cod.n
    for i, row in enumerate(e.rows):
        acc = 0
        for j in _bits(row):
            acc |= 1 << h.mapping[j]
        rows[h.mapping[i]] |= acc
    return CIdeal(h.cod, h.cod, _saturate(h.cod, h.cod, rows))


def image_filter_comparisons(h: FrameHom, q: QuasiUniformity, target: QuasiUniformity):
    """The two filter comparisons for a hom h against a target filter."""
    img_min = image_cideal(h, q.minimum)
    return {
        "image_generators": [image_cideal(h, g) for g in q.generators],
        "image_inside_target": target.contains(img_min),
        "target_inside_image_filter": all(img_min.subset(g) for g in target.basis),
    }


def is_quasi_uniform_hom(h: FrameHom, qdom: QuasiUniformity, qcod: QuasiUniformity):
    """Images of entourages stay in the target filter."""
    return qcod.contains(image_cideal(h, qdom.minimum))


def recover_sublattice(q: QuasiUniformity, caps: Caps = DEFAULT_CAPS) -> dict:
    """The complemented elements whose basic entourage lies in the filter,
    plus the constructive per-entourage partition witnesses.

    For each transitive basis entourage, the nonzero diagonal maximal elements
    are coarsened by joins until pairwise disjoint; the recovered complements
    reproduce the entourage as an intersection of basic entourages.
    """
    frame = q.frame
    report = q.qu_report()
    if not (report["transitive"] and report["totally_bounded"]):
        raise PreconditionError("filter is not transitive and totally bounded")
    members = [
        r for r in frame.complemented_elements() if q.contains(pervin_entourage(frame, r))
    ]
    sub = Sublattice(frame, members)
    witnesses = []
    for e in q.basis:
        ent = entourage_report(e)
        if not ent["is_transitive"]:
            continue
        diag = [a for a in e.diagonal() if a != frame.zero]
        cover = [a for a in diag if not any(b != a and frame.le(a, b) for b in diag)]
        # coarsen overlapping members by joins until a partition
        changed = True
        while changed:
            changed = False
            for i in range(len(cover)):
                for j in range(i + 1, len(cover)):
                    x, y = cover[i], cover[j]
                    if frame.meet(x, y) != frame.zero:
                        top = frame.join(x, y)
                        if not e.contains(top, top):
                            raise NotALattice("coarsened cover left the entourage")
                        cover = [c for c in cover if c not in (x, y)] + [top]
                        changed = True
                        break
                if changed:
                    break
        cover = sorted(set(cover))
        if frame.join_all(cover) != frame.one:
            raise NotALattice("diagonal cover does not reach the top")
        parts = {}
        for x in cover:
            r_x = frame.join_all(y for y in cover if not e.contains(x, y))
            r_x_star = frame.join_all(z for z in cover if e.contains(x, z))
            if frame.complement_of(r_x) != r_x_star:
                raise NotALattice("partition complement witness failed")
            parts[x] = (r_x, r_x_star)
        rebuilt = None
        for x in cover:
            piece = pervin_entourage(frame, parts[x][0])
            rebuilt = piece if rebuilt is None else rebuilt.intersect(piece)
        witnesses.append({
            "entourage": e,
            "partition": tuple(cover),
            "r_x": {x: parts[x][0] for x in cover},
            "reproduced": rebuilt == e,
        })
    return {"sublattice": sub, "witnesses": witnesses}


def frith_quasi_uniformity(frame: FiniteFrame, s: Sublattice, caps: Caps = DEFAULT_CAPS):
    """The canonical quasi-uniformity on the relative congruence frame,
    generated by the basic entourages at the closed congruences of lattice
    members.  Returns (congruence_frame, quasi_uniformity)."""
    csl = relative_congruence_frame(frame, s, caps)
    gens = [
        pervin_entourage(csl.structure, csl.nabla_index(x)) for x in s.sorted_members()
    ]
    return csl, QuasiUniformity(csl.structure, gens)


def uniform_reflection(q: QuasiUniformity) -> QuasiUniformity:
    """Coarsest uniformity containing the filter: symmetrized generators."""
    out = QuasiUniformity(
        q.frame, [g.intersect(g.inverse()) for g in q.generators]
    )
    if not out.qu_report()["qu4"]:
        raise NotALattice("reflection failed to be a uniformity")
    return out


def frith_coreflection(q: QuasiUniformity, caps: Caps = DEFAULT_CAPS) -> dict:
    """The universal Frith frame over a transitive totally bounded filter.

    Recovers the generating sublattice R, forms the standalone frame it
    carries, and extends the embedding to a dense surjection from the
    relative congruence frame onto the original frame.
    """
    recovered = recover_sublattice(q, caps)
    sub = recovered["sublattice"]
    lattice, to_parent = sub.as_lattice()
    embed = FrameHom(lattice, q.frame, to_parent)
    s_all = Sublattice(lattice, range(lattice.n))
    csl = relative_congruence_frame(lattice, s_all, caps)
    gamma = extend_hom(embed, s_all, caps, csl=csl)
    _, q_dom = frith_quasi_uniformity(lattice, s_all, caps)
    img_min = image_cideal(gamma, q_dom.minimum)
    return {
        "lattice": lattice,
        "sublattice": s_all,
        "congruence_frame": csl,
        "gamma": gamma,
        "dense": gamma.is_dense(),
        "surjective": gamma.is_surjective(),
        "filter_generated": img_min == q.minimum,
        "is_iso": gamma.is_injective() and gamma.is_surjective(),
        "recovered": recovered,
    }
