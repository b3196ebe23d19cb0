#!/usr/bin/env python3
"""Generate the committed LDPC(1056, 880) parity-check fixture.

Progressive edge growth (PEG) construction with column weight 3 over
176 check nodes. After construction the columns are permuted so that
the last 176 columns form an invertible submatrix over GF(2); the
systematic encoder then places message bits in positions 0..879 and
parity bits in positions 880..1055.

Run once; the output file data/ldpc_1056_880.pchk is committed so that
every simulation result is reproducible bit for bit.
"""

import argparse
import random
import sys
from collections import deque


def peg_construct(n_vars, n_checks, col_weight, rng):
    """PEG: for each variable, attach edges to checks at maximal graph
    distance, breaking ties by lowest check degree then lowest index."""
    check_nb = [[] for _ in range(n_checks)]  # check -> vars
    var_nb = [[] for _ in range(n_vars)]      # var -> checks

    for v in range(n_vars):
        for e in range(col_weight):
            if e == 0:
                # first edge: lowest-degree check
                deg = min(len(c) for c in check_nb)
                cands = [c for c in range(n_checks) if len(check_nb[c]) == deg]
                c = rng.choice(cands)
            else:
                # BFS from v through the current subgraph
                dist = {v: 0}
                creached = set()
                frontier = deque([("v", v)])
                layers = []
                cur_checks = set()
                # expand until no new checks appear
                reached = set()
                q = deque([v])
                seen_v = {v}
                seen_c = set()
                while True:
                    nxt_c = set()
                    for vv in q:
                        for cc in var_nb[vv]:
                            if cc not in seen_c:
                                nxt_c.add(cc)
                    if not nxt_c:
                        break
                    seen_c |= nxt_c
                    q2 = set()
                    for cc in nxt_c:
                        for vv in check_nb[cc]:
                            if vv not in seen_v:
                                q2.add(vv)
                    seen_v |= q2
                    q = deque(q2)
                    if not q2 and len(seen_c) == n_checks:
                        break
                unreached = [c for c in range(n_checks) if c not in seen_c]
                if unreached:
                    cands = unreached
                else:
                    # fall back: checks at maximal distance = last BFS layer
                    # recompute layered BFS to find the deepest layer
                    layer_c = []
                    seen_v = {v}
                    seen_c = set()
                    q = {v}
                    while q:
                        nc = set()
                        for vv in q:
                            for cc in var_nb[vv]:
                                if cc not in seen_c:
                                    nc.add(cc)
                        if not nc:
                            break
                        layer_c.append(nc)
                        seen_c |= nc
                        nv = set()
                        for cc in nc:
                            for vv in check_nb[cc]:
                                if vv not in seen_v:
                                    nv.add(vv)
                        seen_v |= nv
                        q = nv
                    cands = sorted(layer_c[-1])
                deg = min(len(check_nb[c]) for c in cands)
                cands = [c for c in cands if len(check_nb[c]) == deg]
                c = rng.choice(cands)
            check_nb[c].append(v)
            var_nb[v].append(c)
    return check_nb, var_nb


def has_4cycle(check_nb, n_vars):
    pair_seen = set()
    for c, vs in enumerate(check_nb):
        s = sorted(vs)
        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                p = (s[i], s[j])
                if p in pair_seen:
                    return True
                pair_seen.add(p)
    return False


def row_masks(check_nb, n_vars):
    rows = []
    for vs in check_nb:
        m = 0
        for v in vs:
            m |= 1 << v
        rows.append(m)
    return rows


def gf2_pivot_columns(rows, n_vars):
    """Gaussian elimination; returns pivot column list (len == rank)."""
    rows = rows[:]
    pivots = []
    r = 0
    for col in range(n_vars):
        sel = None
        for i in range(r, len(rows)):
            if (rows[i] >> col) & 1:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(len(rows)):
            if i != r and ((rows[i] >> col) & 1):
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/ldpc_1056_880.pchk")
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()

    n, m, wc = 1056, 176, 3
    rng = random.Random(args.seed)

    for attempt in range(20):
        check_nb, var_nb = peg_construct(n, m, wc, rng)
        if has_4cycle(check_nb, n):
            print(f"attempt {attempt}: 4-cycle found, retrying", file=sys.stderr)
            continue
        rows = row_masks(check_nb, n)
        pivots = gf2_pivot_columns(rows, n)
        if len(pivots) != m:
            print(f"attempt {attempt}: rank {len(pivots)} < {m}, retrying",
                  file=sys.stderr)
            continue
        break
    else:
        sys.exit("failed to build a valid matrix")

    # permute columns: non-pivot columns first (message), pivot columns last
    # (parity). Relabeling variables preserves girth and column weights.
    pivot_set = set(pivots)
    order = [v for v in range(n) if v not in pivot_set] + pivots
    new_index = {old: new for new, old in enumerate(order)}
    check_nb = [sorted(new_index[v] for v in vs) for vs in check_nb]

    # sanity on the permuted matrix: last m columns invertible
    rows = row_masks(check_nb, n)
    tail = [(r >> (n - m)) & ((1 << m) - 1) for r in rows]
    if len(gf2_pivot_columns(tail, m)) != m:
        sys.exit("tail submatrix not invertible after permutation")

    degs = sorted(len(vs) for vs in check_nb)
    print(f"check degrees: min {degs[0]} max {degs[-1]}")

    with open(args.out, "w") as f:
        f.write("# LDPC(1056,880) parity-check matrix, one line per check node\n")
        f.write("# listing the variable indices participating in that check.\n")
        f.write(f"# n={n} checks={m} column_weight={wc} girth>=6\n")
        f.write("# systematic positions: message 0..879, parity 880..1055\n")
        f.write(f"# generator: scripts/gen_ldpc_fixture.py --seed {args.seed}\n")
        for vs in check_nb:
            f.write(" ".join(str(v) for v in vs) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
