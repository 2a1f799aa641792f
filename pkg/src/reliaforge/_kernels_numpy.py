"""Pure-numpy implementations of the numeric kernels.

Fallback backend used when numba is unavailable or disabled through
RELIAFORGE_NO_NUMBA.  Same signatures and semantics as _kernels_numba.
"""

from __future__ import annotations

import numpy as np


def path_products(r, path_ptr, path_elems):
    """Reliability of each path: product of its element reliabilities."""
    return np.multiply.reduceat(r[path_elems], path_ptr[:-1])


def od_values(products, od_ptr):
    """Per-OD reliability 1 - prod(1 - p) over the OD's paths; no paths -> 0."""
    n_od = od_ptr.size - 1
    out = np.zeros(n_od)
    complement = 1.0 - products
    for od in range(n_od):
        a, b = od_ptr[od], od_ptr[od + 1]
        if b > a:
            out[od] = 1.0 - np.prod(complement[a:b])
    return out


def system_index(r, path_ptr, path_elems, od_ptr):
    """Mean OD reliability."""
    values = od_values(path_products(r, path_ptr, path_elems), od_ptr)
    return float(values.mean())


def system_index_batch(states, path_ptr, path_elems, od_ptr):
    """System index for each row of ``states`` (shape [m, n_elements])."""
    m = states.shape[0]
    n_paths = path_ptr.size - 1
    products = np.ones((m, n_paths))
    for p in range(n_paths):
        for k in range(path_ptr[p], path_ptr[p + 1]):
            products[:, p] *= states[:, path_elems[k]]
    n_od = od_ptr.size - 1
    total = np.zeros(m)
    for od in range(n_od):
        survive = np.ones(m)
        for p in range(od_ptr[od], od_ptr[od + 1]):
            survive *= 1.0 - products[:, p]
        total += 1.0 - survive
    return total / n_od


def system_gradient(r, path_ptr, path_elems, od_ptr, n_elements):
    """Exact partial derivatives of the system index w.r.t. each reliability.

    Uses leave-one-out prefix/suffix products, so values stay exact even at
    r_i = 0 or path reliability 1 (no division).
    """
    products = path_products(r, path_ptr, path_elems)
    grad = np.zeros(n_elements)
    n_od = od_ptr.size - 1
    for od in range(n_od):
        a, b = od_ptr[od], od_ptr[od + 1]
        m = b - a
        if m == 0:
            continue
        comp = 1.0 - products[a:b]
        prefix = np.concatenate(([1.0], np.cumprod(comp)))
        suffix = np.concatenate((np.cumprod(comp[::-1])[::-1], [1.0]))
        for j in range(m):
            outer = prefix[j] * suffix[j + 1]
            s, e = path_ptr[a + j], path_ptr[a + j + 1]
            elems = path_elems[s:e]
            rr = r[elems]
            pre = np.concatenate(([1.0], np.cumprod(rr)))
            suf = np.concatenate((np.cumprod(rr[::-1])[::-1], [1.0]))
            np.add.at(grad, elems, outer * pre[:-1] * suf[1:])
    return grad / n_od


def victim_indices(r, path_ptr, path_elems, od_ptr, n_elements):
    """System index after zeroing each element's reliability in turn."""
    products = path_products(r, path_ptr, path_elems)
    n_paths = path_ptr.size - 1
    member = np.zeros((n_paths, n_elements), dtype=bool)
    for p in range(n_paths):
        member[p, path_elems[path_ptr[p]:path_ptr[p + 1]]] = True
    # survive[v, p] = 1 - p_p unless path p contains victim v (then the path is dead)
    survive = np.where(member.T, 1.0, 1.0 - products[None, :])
    n_od = od_ptr.size - 1
    total = np.zeros(n_elements)
    for od in range(n_od):
        a, b = od_ptr[od], od_ptr[od + 1]
        if b > a:
            total += 1.0 - np.prod(survive[:, a:b], axis=1)
    return total / n_od


def exact_up_probability(r, path_ptr, path_elems):
    """Exact P(some path fully up) by enumerating the 2^k element states.

    ``r`` uses a local element numbering covering only this OD's paths.
    Chunked so memory stays bounded for k up to 25.
    """
    k = r.size
    n_paths = path_ptr.size - 1
    n_states = 1 << k
    chunk = min(n_states, 1 << 16)
    total = 0.0
    bits_template = np.arange(k, dtype=np.int64)
    for start in range(0, n_states, chunk):
        states = np.arange(start, min(start + chunk, n_states), dtype=np.int64)
        bits = (states[:, None] >> bits_template[None, :]) & 1
        up = np.zeros(states.size, dtype=bool)
        for p in range(n_paths):
            elems = path_elems[path_ptr[p]:path_ptr[p + 1]]
            up |= bits[:, elems].all(axis=1)
        prob = np.prod(np.where(bits == 1, r[None, :], 1.0 - r[None, :]), axis=1)
        total += float(prob[up].sum())
    return total


def project_box_budget(v, upper, cost, budget):
    """Euclidean projection onto {0 <= x <= upper, cost . x <= budget}.

    Bisection on the budget multiplier; the returned point always satisfies
    the budget (the final multiplier is taken from the feasible side).
    """
    x = np.clip(v, 0.0, upper)
    if float(cost @ x) <= budget:
        return x
    lo, hi = 0.0, 1.0
    while float(cost @ np.clip(v - hi * cost, 0.0, upper)) > budget:
        lo = hi
        hi *= 2.0
    for _ in range(128):
        mid = 0.5 * (lo + hi)
        if float(cost @ np.clip(v - mid * cost, 0.0, upper)) > budget:
            lo = mid
        else:
            hi = mid
    return np.clip(v - hi * cost, 0.0, upper)


def ascent(r0, upper, cost, budget, x0, path_ptr, path_elems, od_ptr,
           max_iter, gain_tol, kkt_tol):
    """Projected gradient ascent of the system index over the budget polytope.

    Returns (x, objective, projected_gradient_norm).  Backtracking Armijo
    line search along the projection arc; the step doubles after each
    accepted move.
    """
    n = r0.size
    probe = 1e-6
    x = project_box_budget(x0, upper, cost, budget)
    value = system_index(r0 + x, path_ptr, path_elems, od_ptr)
    step = 1.0
    stall = 0
    pg_norm = np.inf
    for _ in range(max_iter):
        grad = system_gradient(r0 + x, path_ptr, path_elems, od_ptr, n)
        move = project_box_budget(x + probe * grad, upper, cost, budget) - x
        pg_norm = float(np.sqrt(move @ move)) / probe
        if pg_norm <= kkt_tol:
            break
        trial = step
        accepted = False
        x_new = x
        value_new = value
        for _ in range(60):
            x_new = project_box_budget(x + trial * grad, upper, cost, budget)
            delta = x_new - x
            linear = float(grad @ delta)
            if linear <= 0.0:
                break
            value_new = system_index(r0 + x_new, path_ptr, path_elems, od_ptr)
            if value_new >= value + 1e-4 * linear:
                accepted = True
                break
            trial *= 0.5
        if not accepted:
            stall += 1
            step = max(step * 0.5, 1e-12)
            if stall >= 3:
                break
            continue
        gain = value_new - value
        x = x_new
        value = value_new
        step = min(trial * 2.0, 1e6)
        if gain < gain_tol:
            stall += 1
            if stall >= 3:
                break
        else:
            stall = 0
    grad = system_gradient(r0 + x, path_ptr, path_elems, od_ptr, n)
    move = project_box_budget(x + probe * grad, upper, cost, budget) - x
    pg_norm = float(np.sqrt(move @ move)) / probe
    return x, value, pg_norm
