"""Numba-compiled implementations of the numeric kernels.

Hot loops (batched evaluation, gradient, damage sweep, exact enumeration,
ascent) as nopython kernels.  Semantics match _kernels_numpy exactly.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def path_products(r, path_ptr, path_elems):
    n_paths = path_ptr.size - 1
    out = np.empty(n_paths)
    for p in range(n_paths):
        acc = 1.0
        for k in range(path_ptr[p], path_ptr[p + 1]):
            acc *= r[path_elems[k]]
        out[p] = acc
    return out


@njit(cache=True)
def od_values(products, od_ptr):
    n_od = od_ptr.size - 1
    out = np.zeros(n_od)
    for od in range(n_od):
        a, b = od_ptr[od], od_ptr[od + 1]
        if b > a:
            acc = 1.0
            for p in range(a, b):
                acc *= 1.0 - products[p]
            out[od] = 1.0 - acc
    return out


@njit(cache=True)
def system_index(r, path_ptr, path_elems, od_ptr):
    values = od_values(path_products(r, path_ptr, path_elems), od_ptr)
    return values.mean()


@njit(cache=True)
def system_index_batch(states, path_ptr, path_elems, od_ptr):
    m = states.shape[0]
    out = np.empty(m)
    for i in range(m):
        out[i] = system_index(states[i], path_ptr, path_elems, od_ptr)
    return out


@njit(cache=True)
def system_gradient(r, path_ptr, path_elems, od_ptr, n_elements):
    products = path_products(r, path_ptr, path_elems)
    grad = np.zeros(n_elements)
    n_od = od_ptr.size - 1
    for od in range(n_od):
        a, b = od_ptr[od], od_ptr[od + 1]
        m = b - a
        if m == 0:
            continue
        prefix = np.empty(m + 1)
        prefix[0] = 1.0
        for j in range(m):
            prefix[j + 1] = prefix[j] * (1.0 - products[a + j])
        suffix = np.empty(m + 1)
        suffix[m] = 1.0
        for j in range(m - 1, -1, -1):
            suffix[j] = suffix[j + 1] * (1.0 - products[a + j])
        for j in range(m):
            outer = prefix[j] * suffix[j + 1]
            s, e = path_ptr[a + j], path_ptr[a + j + 1]
            length = e - s
            pre = np.empty(length + 1)
            pre[0] = 1.0
            for k in range(length):
                pre[k + 1] = pre[k] * r[path_elems[s + k]]
            suf = np.empty(length + 1)
            suf[length] = 1.0
            for k in range(length - 1, -1, -1):
                suf[k] = suf[k + 1] * r[path_elems[s + k]]
            for k in range(length):
                grad[path_elems[s + k]] += outer * pre[k] * suf[k + 1]
    return grad / n_od


@njit(cache=True)
def victim_indices(r, path_ptr, path_elems, od_ptr, n_elements):
    products = path_products(r, path_ptr, path_elems)
    n_od = od_ptr.size - 1
    out = np.empty(n_elements)
    for victim in range(n_elements):
        total = 0.0
        for od in range(n_od):
            a, b = od_ptr[od], od_ptr[od + 1]
            if b == a:
                continue
            acc = 1.0
            for p in range(a, b):
                dead = False
                for k in range(path_ptr[p], path_ptr[p + 1]):
                    if path_elems[k] == victim:
                        dead = True
                        break
                if not dead:
                    acc *= 1.0 - products[p]
            total += 1.0 - acc
        out[victim] = total / n_od
    return out


@njit(cache=True)
def exact_up_probability(r, path_ptr, path_elems):
    k = r.size
    n_paths = path_ptr.size - 1
    total = 0.0
    for state in range(1 << k):
        up = False
        for p in range(n_paths):
            ok = True
            for t in range(path_ptr[p], path_ptr[p + 1]):
                if not (state >> path_elems[t]) & 1:
                    ok = False
                    break
            if ok:
                up = True
                break
        if up:
            prob = 1.0
            for e in range(k):
                if (state >> e) & 1:
                    prob *= r[e]
                else:
                    prob *= 1.0 - r[e]
            total += prob
    return total


@njit(cache=True)
def _clip_box(v, upper):
    out = np.empty(v.size)
    for i in range(v.size):
        value = v[i]
        if value < 0.0:
            value = 0.0
        elif value > upper[i]:
            value = upper[i]
        out[i] = value
    return out


@njit(cache=True)
def _budget_spend(v, upper, cost, multiplier):
    total = 0.0
    for i in range(v.size):
        value = v[i] - multiplier * cost[i]
        if value < 0.0:
            value = 0.0
        elif value > upper[i]:
            value = upper[i]
        total += cost[i] * value
    return total


@njit(cache=True)
def project_box_budget(v, upper, cost, budget):
    x = _clip_box(v, upper)
    if np.dot(cost, x) <= budget:
        return x
    lo, hi = 0.0, 1.0
    while _budget_spend(v, upper, cost, hi) > budget:
        lo = hi
        hi *= 2.0
    for _ in range(128):
        mid = 0.5 * (lo + hi)
        if _budget_spend(v, upper, cost, mid) > budget:
            lo = mid
        else:
            hi = mid
    return _clip_box(v - hi * cost, upper)


@njit(cache=True)
def ascent(r0, upper, cost, budget, x0, path_ptr, path_elems, od_ptr,
           max_iter, gain_tol, kkt_tol):
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
        pg_norm = np.sqrt(np.dot(move, move)) / probe
        if pg_norm <= kkt_tol:
            break
        trial = step
        accepted = False
        x_new = x
        value_new = value
        for _ in range(60):
            x_new = project_box_budget(x + trial * grad, upper, cost, budget)
            delta = x_new - x
            linear = np.dot(grad, delta)
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
    pg_norm = np.sqrt(np.dot(move, move)) / probe
    return x, value, pg_norm
