"""Symmetric block designs, symmetric transversal designs, Hadamard matrices.

A symmetric design with parameters (v, k, lambda) is a family of v blocks of
size k over v points in which every pair of distinct points lies in exactly
lambda blocks and every pair of distinct blocks meets in exactly lambda
points.  A symmetric transversal design STD_lambda[k; g] partitions its
k*g points into k classes of size g; blocks are transversals of the classes,
cross-class point pairs lie in exactly lambda blocks, and the dual is again
a transversal design (forcing k = lambda*g and lambda*g^2 blocks).

Constructors here are the standard ones (projective planes over GF(q),
Sylvester/Paley Hadamard matrices, biaffine planes from AG(2, q), the
Hadamard-matrix symmetric net).  Correctness never rests on a construction:
validate() / validate_std() recheck every axiom by exhaustive pair counting
and are cheap at the scales this package targets (v up to a few thousand).

All objects are immutable after construction and safe to share across
threads.  Points and blocks are dense 0-based integer indices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import make_field, prime_power


class ConstructionError(ValueError):
    """A requested structure cannot be built from the given parameters."""


@dataclass(frozen=True)
class SymmetricDesign:
    v: int
    k: int
    lam: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return self.k - self.lam

    @property
    def point_count(self) -> int:
        return self.v


@dataclass(frozen=True)
class TransversalDesign:
    g: int
    k: int
    lam: int
    classes: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def v(self) -> int:
        return self.k * self.g

    @property
    def order(self) -> int:
        return self.k - self.lam

    @property
    def point_count(self) -> int:
        return self.v


Design = SymmetricDesign | TransversalDesign


@dataclass(frozen=True)
class HadamardMatrix:
    n: int
    rows: tuple[tuple[int, ...], ...]

    def is_orthogonal(self) -> bool:
        """True iff H * H^T == n * I."""
        n = self.n
        for i in range(n):
            for j in range(i, n):
                dot = sum(a * b for a, b in zip(self.rows[i], self.rows[j]))
                if dot != (n if i == j else 0):
                    return False
        return True


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


# ---------------------------------------------------------------------------
# bitset helpers
# ---------------------------------------------------------------------------

def _mask(indices) -> int:
    m = 0
    for x in indices:
        m |= 1 << x
    return m


def block_masks(d: Design) -> list[int]:
    """Each block as a bitset over the point universe."""
    return [_mask(b) for b in d.blocks]


def pencil_masks(d: Design) -> list[int]:
    """For each point x, the bitset of indices of blocks containing x."""
    pencils = [0] * d.point_count
    for j, b in enumerate(d.blocks):
        bit = 1 << j
        for x in b:
            pencils[x] |= bit
    return pencils


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def projective_plane(q: int) -> SymmetricDesign:
    """The projective plane over GF(q): 1-dimensional subspaces of GF(q)^3 as
    points, 2-dimensional subspaces as blocks; parameters (q^2+q+1, q+1, 1)."""
    pp = prime_power(q)
    if pp is None:
        raise ConstructionError(f"{q} is not a prime power")
    F = make_field(*pp)
    pts = [(1, b, c) for b in F.elements for c in F.elements]
    pts += [(0, 1, c) for c in F.elements]
    pts.append((0, 0, 1))

    def dot(u, w):
        return F.add(F.add(F.mul(u[0], w[0]), F.mul(u[1], w[1])), F.mul(u[2], w[2]))

    blocks = tuple(
        tuple(i for i, pt in enumerate(pts) if dot(line, pt) == 0) for line in pts
    )
    return SymmetricDesign(v=q * q + q + 1, k=q + 1, lam=1, blocks=blocks)


def point_complement_design(v: int) -> SymmetricDesign:
    """The (v, v-1, v-2) design whose blocks are the point complements; its
    incidence graph is the complete bipartite graph minus a perfect matching."""
    if v < 3:
        raise ConstructionError(f"need v >= 3, got {v}")
    blocks = tuple(tuple(x for x in range(v) if x != i) for i in range(v))
    return SymmetricDesign(v=v, k=v - 1, lam=v - 2, blocks=blocks)


def _sylvester_double(rows):
    top = [r + r for r in rows]
    bottom = [r + tuple(-x for x in r) for r in rows]
    return top + bottom


def _kronecker(a_rows, b_rows):
    return [
        tuple(x * y for x in ra for y in rb) for ra in a_rows for rb in b_rows
    ]


def _paley_rows(q: int):
    """Order q+1 rows from the quadratic character of GF(q), q = 3 mod 4."""
    F = make_field(*prime_power(q))
    squares = {F.mul(x, x) for x in range(1, q)}

    def chi(x):
        if x == 0:
            return 0
        return 1 if x in squares else -1

    size = q + 1
    rows = [[0] * size for _ in range(size)]
    rows[0][0] = 1
    for j in range(1, size):
        rows[0][j] = 1
        rows[j][0] = -1
    for i in range(1, size):
        for j in range(1, size):
            rows[i][j] = chi(F.sub(i - 1, j - 1)) + (1 if i == j else 0)
    return [tuple(r) for r in rows]


def _hadamard_rows(n: int, tried: list[str], cache: dict):
    if n in cache:
        return cache[n]
    rows = None
    if n == 1:
        rows = [(1,)]
    elif n == 2:
        rows = [(1, 1), (1, -1)]
    elif n % 4 != 0:
        tried.append(f"order {n}: not 1, 2, or a multiple of 4")
    else:
        half = _hadamard_rows(n // 2, tried, cache)
        if half is not None:
            rows = _sylvester_double(half)
        else:
            tried.append(f"Sylvester doubling from order {n // 2}")
            pp = prime_power(n - 1)
            if pp is not None and (n - 1) % 4 == 3:
                rows = _paley_rows(n - 1)
            else:
                tried.append(f"quadratic-character construction at order {n - 1}")
                for a in range(4, n // 2 + 1, 4):
                    if n % a == 0 and (n // a) % 4 == 0:
                        ra = _hadamard_rows(a, tried, cache)
                        rb = _hadamard_rows(n // a, tried, cache)
                        if ra is not None and rb is not None:
                            rows = _kronecker(ra, rb)
                            break
                        tried.append(f"tensor product {a} x {n // a}")
    cache[n] = rows
    return rows


def hadamard_matrix(n: int) -> HadamardMatrix:
    """A Hadamard matrix of order n via Sylvester doubling, the quadratic
    character of GF(n-1) when n-1 = 3 mod 4 is a prime power, or tensor
    products of smaller orders.  Output is deterministic."""
    if n < 1:
        raise ConstructionError(f"order {n} must be positive")
    tried: list[str] = []
    rows = _hadamard_rows(n, tried, cache={})
    if rows is None:
        raise ConstructionError(
            f"no implemented construction reaches order {n}; tried: "
            + "; ".join(tried)
        )
    H = HadamardMatrix(n=n, rows=tuple(rows))
    assert H.is_orthogonal()
    return H


def _normalize_hadamard(H: HadamardMatrix):
    """Negate rows, then columns, whose first entry is -1 (deterministic)."""
    rows = [list(r) for r in H.rows]
    for r in rows:
        if r[0] < 0:
            for j in range(len(r)):
                r[j] = -r[j]
    for j in range(len(rows)):
        if rows[0][j] < 0:
            for r in rows:
                r[j] = -r[j]
    return rows


def hadamard_design(H: HadamardMatrix) -> SymmetricDesign:
    """The (4t-1, 2t-1, t-1) design carried by a Hadamard matrix of order
    n = 4t >= 8: normalize, drop the first row and column, and read each
    remaining row's +1 positions as a block."""
    n = H.n
    if n < 8 or n % 4 != 0:
        raise ConstructionError(
            f"order {n} must be a multiple of 4 and at least 8"
        )
    rows = _normalize_hadamard(H)
    blocks = tuple(
        tuple(j - 1 for j in range(1, n) if rows[i][j] > 0) for i in range(1, n)
    )
    t = n // 4
    return SymmetricDesign(v=n - 1, k=2 * t - 1, lam=t - 1, blocks=blocks)


def biaffine_plane(q: int) -> TransversalDesign:
    """The affine plane over GF(q) with the vertical parallel class removed:
    points are GF(q)^2, blocks the lines y = m*x + c, point classes the
    vertical lines.  An STD_1[q; q]."""
    pp = prime_power(q)
    if pp is None:
        raise ConstructionError(f"{q} is not a prime power")
    F = make_field(*pp)
    classes = tuple(tuple(x * q + y for y in range(q)) for x in range(q))
    blocks = []
    for m in range(q):
        for c in range(q):
            blocks.append(tuple(sorted(x * q + F.add(F.mul(m, x), c) for x in range(q))))
    return TransversalDesign(g=q, k=q, lam=1, classes=classes, blocks=tuple(blocks))


def hadamard_std(H: HadamardMatrix) -> TransversalDesign:
    """The symmetric net STD_lambda[2*lambda; 2] carried by a Hadamard matrix
    of order n = 2*lambda.  Points are (row, eps), classes pair the two signs
    of each row, and block (col, delta) takes from class i the point whose
    sign eps satisfies H[i][col] * (-1)^(eps+delta) = +1.  The incidence
    graph is the Hadamard graph of order n."""
    n = H.n
    if n != 2 and (n < 2 or n % 4 != 0):
        raise ConstructionError(
            f"order {n} must be 2 or a multiple of 4 (so lambda = n/2 is 1 or even)"
        )
    classes = tuple((2 * i, 2 * i + 1) for i in range(n))
    blocks = []
    for j in range(n):
        for delta in (0, 1):
            blocks.append(
                tuple(
                    2 * i + (delta if H.rows[i][j] > 0 else 1 - delta)
                    for i in range(n)
                )
            )
    return TransversalDesign(g=2, k=n, lam=n // 2, classes=classes, blocks=tuple(blocks))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate(d: SymmetricDesign) -> ValidationReport:
    """Exhaustively check every symmetric-design axiom, including the order
    bounds 4q-1 <= v <= q^2+q+1 when q >= 2.  Violations are reported (one
    witness per axiom), never raised."""
    violations = []
    v, k, lam = d.v, d.k, d.lam
    if len(d.blocks) != v:
        violations.append(f"block count {len(d.blocks)} != v = {v}")
    for j, blk in enumerate(d.blocks):
        if any(x < 0 or x >= v for x in blk):
            violations.append(f"block {j} contains an out-of-range point")
            return ValidationReport(ok=False, violations=tuple(violations))
    bmasks = block_masks(d)
    for j, (blk, m) in enumerate(zip(d.blocks, bmasks)):
        if m.bit_count() != k or len(blk) != k:
            violations.append(f"block {j} has size {m.bit_count()}, expected k = {k}")
            break
    pencils = pencil_masks(d)
    for y in range(v):
        hit = None
        for x in range(y):
            got = (pencils[x] & pencils[y]).bit_count()
            if got != lam:
                hit = (x, y, got)
                break
        if hit:
            violations.append(
                f"point pair ({hit[0]}, {hit[1]}) lies in {hit[2]} blocks, expected lambda = {lam}"
            )
            break
    for j2 in range(len(bmasks)):
        hit = None
        for j1 in range(j2):
            got = (bmasks[j1] & bmasks[j2]).bit_count()
            if got != lam:
                hit = (j1, j2, got)
                break
        if hit:
            violations.append(
                f"block pair ({hit[0]}, {hit[1]}) meets in {hit[2]} points, expected lambda = {lam}"
            )
            break
    q = k - lam
    if q >= 2:
        if not 4 * q - 1 <= v:
            violations.append(f"order bound violated: 4q-1 = {4 * q - 1} > v = {v}")
        if not v <= q * q + q + 1:
            violations.append(f"order bound violated: v = {v} > q^2+q+1 = {q * q + q + 1}")
    return ValidationReport(ok=not violations, violations=tuple(violations))


def _recover_parallel_classes(d: TransversalDesign):
    """Group the blocks into parallel classes (pairwise disjoint, each class
    partitioning the points).  Returns the classes or an error string."""
    bmasks = block_masks(d)
    n = len(bmasks)
    full = (1 << d.v) - 1
    assigned = [False] * n
    classes = []
    for j in range(n):
        if assigned[j]:
            continue
        members = [j]
        assigned[j] = True
        union = bmasks[j]
        for j2 in range(j + 1, n):
            if not assigned[j2] and bmasks[j] & bmasks[j2] == 0:
                if union & bmasks[j2]:
                    return None, f"blocks {j} and {j2} cannot be grouped into a parallel class"
                members.append(j2)
                assigned[j2] = True
                union |= bmasks[j2]
        if union != full or len(members) != d.g:
            return None, f"block {j} lies in no parallel class of size g = {d.g}"
        classes.append(tuple(members))
    return tuple(classes), None


def validate_std(d: TransversalDesign) -> ValidationReport:
    """Exhaustively check the transversal-design axioms, the symmetry
    constraints k = lambda*g and |blocks| = lambda*g^2, and that the dual is
    again a transversal design (blocks resolve into parallel classes and
    cross-class blocks meet in exactly lambda points)."""
    violations = []
    g, k, lam, v = d.g, d.k, d.lam, d.v
    if k != lam * g:
        violations.append(f"k = {k} != lambda*g = {lam * g}")
    if len(d.blocks) != lam * g * g:
        violations.append(f"block count {len(d.blocks)} != lambda*g^2 = {lam * g * g}")
    class_of = [-1] * v
    sizes_ok = True
    for ci, cls in enumerate(d.classes):
        if len(cls) != g:
            violations.append(f"point class {ci} has size {len(cls)}, expected g = {g}")
            sizes_ok = False
            break
        for x in cls:
            if x < 0 or x >= v or class_of[x] != -1:
                violations.append(f"point classes do not partition the points (point {x})")
                sizes_ok = False
                break
        if not sizes_ok:
            break
        for x in cls:
            class_of[x] = ci
    if sizes_ok and (len(d.classes) != k or any(c == -1 for c in class_of)):
        violations.append(f"expected k = {k} point classes covering all {v} points")
    for j, blk in enumerate(d.blocks):
        if len(blk) != k or len(set(blk)) != k:
            violations.append(f"block {j} has size {len(set(blk))}, expected k = {k}")
            break
        if sizes_ok and all(0 <= x < v for x in blk):
            seen_classes = {class_of[x] for x in blk}
            if len(seen_classes) != k:
                violations.append(f"block {j} does not meet every point class exactly once")
                break
        elif any(x < 0 or x >= v for x in blk):
            violations.append(f"block {j} contains an out-of-range point")
            break
    if not violations:
        pencils = pencil_masks(d)
        hit = None
        for y in range(v):
            for x in range(y):
                got = (pencils[x] & pencils[y]).bit_count()
                want = 0 if class_of[x] == class_of[y] else lam
                if got != want:
                    hit = (x, y, got, want)
                    break
            if hit:
                break
        if hit:
            violations.append(
                f"point pair ({hit[0]}, {hit[1]}) lies in {hit[2]} blocks, expected {hit[3]}"
            )
    if not violations:
        classes, err = _recover_parallel_classes(d)
        if err is not None:
            violations.append(f"dual is not a transversal design: {err}")
        else:
            bmasks = block_masks(d)
            pclass_of = [0] * len(bmasks)
            for ci, cls in enumerate(classes):
                for j in cls:
                    pclass_of[j] = ci
            hit = None
            for j2 in range(len(bmasks)):
                for j1 in range(j2):
                    got = (bmasks[j1] & bmasks[j2]).bit_count()
                    want = 0 if pclass_of[j1] == pclass_of[j2] else lam
                    if got != want:
                        hit = (j1, j2, got, want)
                        break
                if hit:
                    break
            if hit:
                violations.append(
                    f"dual is not a transversal design: blocks ({hit[0]}, {hit[1]}) "
                    f"meet in {hit[2]} points, expected {hit[3]}"
                )
    return ValidationReport(ok=not violations, violations=tuple(violations))


def validate_design(d: Design) -> ValidationReport:
    """Dispatch to validate() or validate_std() by type."""
    if isinstance(d, SymmetricDesign):
        return validate(d)
    return validate_std(d)


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def dual(d: Design) -> Design:
    """Swap the roles of points and blocks.  For a symmetric design the
    parameters are unchanged; for a symmetric transversal design the dual's
    point classes are the parallel classes of the input."""
    rep = validate_design(d)
    if not rep.ok:
        raise ValueError(f"design does not validate: {rep.violations[0]}")
    pencils = pencil_masks(d)
    n_blocks = len(d.blocks)
    new_blocks = tuple(
        tuple(j for j in range(n_blocks) if (pencils[x] >> j) & 1)
        for x in range(d.point_count)
    )
    if isinstance(d, SymmetricDesign):
        return SymmetricDesign(v=d.v, k=d.k, lam=d.lam, blocks=new_blocks)
    classes, err = _recover_parallel_classes(d)
    if err is not None:
        raise ValueError(f"parallel classes are not recoverable: {err}")
    ordered = tuple(sorted((tuple(sorted(c)) for c in classes), key=lambda c: c[0]))
    return TransversalDesign(g=d.g, k=d.k, lam=d.lam, classes=ordered, blocks=new_blocks)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------
#
# Line 1 is `SD v k lambda` or `STD g k lambda`.  For an STD the next k lines
# list each class's point indices; then one line per block with ascending
# space-separated point indices.  `#` starts a comment line; encoding ASCII.

def to_text(d: Design) -> str:
    lines = []
    if isinstance(d, SymmetricDesign):
        lines.append(f"SD {d.v} {d.k} {d.lam}")
    else:
        lines.append(f"STD {d.g} {d.k} {d.lam}")
        for cls in d.classes:
            lines.append(" ".join(str(x) for x in sorted(cls)))
    for blk in d.blocks:
        lines.append(" ".join(str(x) for x in sorted(blk)))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Design:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty design file")
    head = lines[0].split()
    if len(head) != 4 or head[0] not in ("SD", "STD"):
        raise ValueError(f"bad header line: {lines[0]!r}")
    try:
        a, b, c = int(head[1]), int(head[2]), int(head[3])
    except ValueError:
        raise ValueError(f"bad header line: {lines[0]!r}") from None

    def parse_rows(rows):
        out = []
        for ln in rows:
            try:
                out.append(tuple(int(tok) for tok in ln.split()))
            except ValueError:
                raise ValueError(f"bad index line: {ln!r}") from None
        return tuple(out)

    if head[0] == "SD":
        v, k, lam = a, b, c
        body = parse_rows(lines[1:])
        if len(body) != v:
            raise ValueError(f"expected {v} block lines, found {len(body)}")
        return SymmetricDesign(v=v, k=k, lam=lam, blocks=body)
    g, k, lam = a, b, c
    n_blocks = lam * g * g
    body = parse_rows(lines[1:])
    if len(body) != k + n_blocks:
        raise ValueError(
            f"expected {k} class lines and {n_blocks} block lines, found {len(body)}"
        )
    return TransversalDesign(
        g=g, k=k, lam=lam, classes=body[:k], blocks=body[k:]
    )
