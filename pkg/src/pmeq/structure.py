"""Reducibility structure and diagonal similarity/equivalence testing.

A square matrix is irreducible when the digraph with an edge (i, j) for
every nonzero off-diagonal entry A[i, j] is strongly connected.  The
strongly connected components give the irreducible diagonal blocks; two
matrices can only match principal minors blockwise when their component
partitions agree.
"""

from __future__ import annotations

from collections import deque

from .errors import LabelMismatch
from .linalg import Matrix, label_sort_key


class BlockDecomposition:
    """SCC blocks of a matrix, in a deterministic topological order."""

    def __init__(self, matrix, blocks):
        self.matrix = matrix
        self.blocks = tuple(tuple(b) for b in blocks)

    def block_matrices(self):
        return [self.matrix.principal_submatrix(b) for b in self.blocks]

    def partition(self):
        return frozenset(frozenset(b) for b in self.blocks)


class DiagonalWitness:
    """Invertible diagonal D with B = D A D^{-1}, or B = D A^T D^{-1}
    when transposed is set."""

    def __init__(self, D, transposed=False):
        self.D = dict(D)
        self.transposed = bool(transposed)

    def check(self, A, B):
        """Exact verification of the similarity relation on (A, B)."""
        f = A.field
        if A.row_labels != B.row_labels or A.col_labels != B.col_labels:
            return False
        src = A.transpose() if self.transposed else A
        for l in A.row_labels:
            if l not in self.D or f.is_zero(f.coerce(self.D[l])):
                return False
        for i in A.row_labels:
            di = f.coerce(self.D[i])
            for j in A.col_labels:
                dj = f.coerce(self.D[j])
                expected = f.div(f.mul(di, src.get(i, j)), dj)
                if B.get(i, j) != expected:
                    return False
        return True

    def __repr__(self):
        return f"DiagonalWitness({self.D}, transposed={self.transposed})"


def digraph_edges(A):
    """Adjacency lists of G_A: edge (i, j) iff i != j and A[i,j] != 0."""
    f = A.field
    adj = {l: [] for l in A.row_labels}
    for i in A.row_labels:
        for j in A.col_labels:
            if i != j and not f.is_zero(A.get(i, j)):
                adj[i].append(j)
    return adj


def _tarjan_sccs(adj, order):
    """Iterative Tarjan; returns list of components (sets of labels)."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = [0]

    for root in order:
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def irreducible_blocks(A):
    """SCC decomposition of G_A, blocks in a topological order of the
    condensation with ties broken by smallest contained label."""
    A.require_square()
    adj = digraph_edges(A)
    order = sorted(A.row_labels, key=label_sort_key)
    sccs = _tarjan_sccs(adj, order)
    comp_of = {}
    for idx, comp in enumerate(sccs):
        for v in comp:
            comp_of[v] = idx
    # condensation edges and in-degrees
    succs = [set() for _ in sccs]
    indeg = [0] * len(sccs)
    for v, outs in adj.items():
        for w in outs:
            a, b = comp_of[v], comp_of[w]
            if a != b and b not in succs[a]:
                succs[a].add(b)
                indeg[b] += 1
    # Kahn's algorithm, smallest-label tie break
    def comp_key(idx):
        return min(label_sort_key(l) for l in sccs[idx])

    ready = sorted((i for i in range(len(sccs)) if indeg[i] == 0), key=comp_key)
    topo = []
    while ready:
        cur = ready.pop(0)
        topo.append(cur)
        changed = False
        for nxt in succs[cur]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                ready.append(nxt)
                changed = True
        if changed:
            ready.sort(key=comp_key)
    blocks = [sorted(sccs[i], key=label_sort_key) for i in topo]
    return BlockDecomposition(A, blocks)


def is_irreducible(A):
    return len(irreducible_blocks(A).blocks) == 1


def partition_compatible(A, B):
    """True iff A and B have equal SCC partitions; returns the common
    blocks paired in A's stored order."""
    if set(A.row_labels) != set(B.row_labels):
        raise LabelMismatch("matrices carry different label sets")
    da = irreducible_blocks(A)
    db = irreducible_blocks(B)
    if da.partition() != db.partition():
        return False, []
    pairs = [(b, b) for b in da.blocks]
    return True, pairs


def diag_similar(A, B):
    """Witness D with B = D A D^{-1}, or None.

    Requires identical zero patterns and equal diagonals; D is fixed to 1
    at the smallest label of each connected component of the undirected
    support graph and propagated along a BFS tree, then fully verified.
    """
    f = A.field
    if A.row_labels != B.row_labels or A.col_labels != B.col_labels:
        return None
    labels = A.row_labels
    for i in labels:
        for j in labels:
            if f.is_zero(A.get(i, j)) != f.is_zero(B.get(i, j)):
                return None
        if A.get(i, i) != B.get(i, i):
            return None
    # undirected support graph on off-diagonal nonzeros
    neighbors = {l: set() for l in labels}
    for i in labels:
        for j in labels:
            if i != j and not f.is_zero(A.get(i, j)):
                neighbors[i].add(j)
                neighbors[j].add(i)
    D = {}
    for start in sorted(labels, key=label_sort_key):
        if start in D:
            continue
        D[start] = f.one
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in sorted(neighbors[i], key=label_sort_key):
                if j in D:
                    continue
                # B[i,j] = D[i] A[i,j] / D[j]  =>  D[j] = D[i] A[i,j] / B[i,j]
                if not f.is_zero(A.get(i, j)):
                    D[j] = f.div(f.mul(D[i], A.get(i, j)), B.get(i, j))
                else:
                    # edge came from the (j, i) entry
                    D[j] = f.div(f.mul(D[i], B.get(j, i)), A.get(j, i))
                queue.append(j)
    witness = DiagonalWitness(D, transposed=False)
    if witness.check(A, B):
        return witness
    return None


def diag_equivalent(A, B):
    """Witness for B = D A D^{-1} or B = D A^T D^{-1}, or None."""
    w = diag_similar(A, B)
    if w is not None:
        return w
    wt = diag_similar(A.transpose(), B)
    if wt is not None:
        return DiagonalWitness(wt.D, transposed=True)
    return None
