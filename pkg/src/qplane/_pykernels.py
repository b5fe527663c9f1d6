"""Pure-Python versions of the compiled kernels in ``_ckernels.pyx``.

Same signatures and outputs; used when the extension is unavailable or when
``QPLANE_PURE=1`` is set.
"""

import numpy as np

BACKEND = "python"


def triangle_marks(idx, sub, canon, dist, q, include_degenerate):
    q2 = q * q
    idx = [int(v) for v in idx]
    sub = sub.tolist()
    canon = canon.tolist()
    dist = dist.tolist()
    cong = set()
    ordered = set()
    sides = set()
    off = 0 if include_degenerate else 1
    n = len(idx)
    for i in range(n):
        a = idx[i]
        for j in range(i + off, n):
            b = idx[j]
            ab = sub[b * q2 + a]
            ba = sub[a * q2 + b]
            d1 = dist[a * q2 + b]
            for k in range(j + off, n):
                c = idx[k]
                ac = sub[c * q2 + a]
                bc = sub[c * q2 + b]
                ca = sub[a * q2 + c]
                cb = sub[b * q2 + c]
                keys = (
                    canon[ab * q2 + ac], canon[ac * q2 + ab],
                    canon[ba * q2 + bc], canon[bc * q2 + ba],
                    canon[ca * q2 + cb], canon[cb * q2 + ca],
                )
                ordered.update(keys)
                cong.add(min(keys))
                s1, s2, s3 = sorted((d1, dist[b * q2 + c], dist[c * q2 + a]))
                sides.add((s1 * q + s2) * q + s3)
    return _mask(cong, q2 * q2), _mask(ordered, q2 * q2), _mask(sides, q2 * q)


def _mask(keys, size):
    out = np.zeros(size, dtype=np.uint8)
    if keys:
        out[np.fromiter(keys, dtype=np.int64)] = 1
    return out


def pair_count(xs, ys, q, ell):
    xs = [int(v) for v in xs]
    ys = [int(v) for v in ys]
    total = 0
    n = len(xs)
    for i in range(n):
        xi, yi = xs[i], ys[i]
        for j in range(i + 1, n):
            dx = xi - xs[j]
            dy = yi - ys[j]
            if (dx * dx + dy * dy) % q == ell:
                total += 1
    return total


def uncovered_targets(ex, ey, pmask, q):
    h = (q + 1) // 2
    ex = [int(v) for v in ex]
    ey = [int(v) for v in ey]
    pm = bytes(np.asarray(pmask, dtype=np.uint8))
    out = np.ones(q * q, dtype=np.uint8)
    for y1 in range(q):
        for y2 in range(q):
            hit = False
            for x1, x2 in zip(ex, ey):
                m1 = (x1 + y1) * h % q
                m2 = (x2 + y2) * h % q
                w1 = (x2 - y2) * h % q
                w2 = (y1 - x1) * h % q
                for r in range(q):
                    if pm[(((m1 + r * w1) % q) * q + (m2 + r * w2) % q) * q + r]:
                        hit = True
                        break
                if hit:
                    break
            if hit:
                out[y1 * q + y2] = 0
    return out


def difference_cover(idx, sub, npts, n):
    import itertools

    idx = [int(v) for v in idx]
    if n == 1:
        return 1 if idx else 0
    sub = sub.tolist()
    seen = set()
    for e1 in idx:
        diffs = [sub[e * npts + e1] for e in idx]
        seen.update(itertools.product(diffs, repeat=n - 1))
    return len(seen)
