"""JIT-compiled event loop for the death-birth chain.

State lives in flat arrays: ``s`` (labels 1/2), ``nbr`` (neighbor table) and
``n1`` (number of type-1 neighbors of each site, kept current on every flip).
Random numbers are drawn outside, in batches, and consumed in order.
"""

import numpy as np
from numba import njit

STOP_BATCH = 0
STOP_TIME = 1
STOP_FIXATED = 2
STOP_MAX_EVENTS = 3
STOP_EXTINCT = 4


@njit(cache=True)
def count_type1_neighbors(s, nbr):
    n = nbr.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for x in range(n):
        c = 0
        for k in range(nbr.shape[1]):
            if s[nbr[x, k]] == 1:
                c += 1
        out[x] = c
    return out


@njit(cache=True)
def flip_probability(s, nbr, n1, A, eps, x):
    N = nbr.shape[1]
    si = s[x]
    num = 0.0
    den = 0.0
    n_other = 0
    for k in range(N):
        y = nbr[x, k]
        sy = s[y]
        c1 = n1[y]
        phi = A[sy - 1, 0] * c1 + A[sy - 1, 1] * (N - c1)
        den += phi
        if sy != si:
            num += phi
            n_other += 1
    if eps == 0.0:
        return n_other / N
    weighted = num / den
    if eps == 1.0:
        return weighted
    return (1.0 - eps) * (n_other / N) + eps * weighted


@njit(cache=True)
def apply_flip(s, nbr, n1, x):
    """Flip site ``x``; returns the change in the number of type-1 sites."""
    if s[x] == 1:
        s[x] = 2
        for k in range(nbr.shape[1]):
            n1[nbr[x, k]] -= 1
        return -1
    s[x] = 1
    for k in range(nbr.shape[1]):
        n1[nbr[x, k]] += 1
    return 1


@njit(cache=True)
def run_batch(s, nbr, n1, A, eps, count1, t, t_stop, events, max_events,
              waits, sites, us, start):
    """Consume events from position ``start`` of the random batch.

    Returns ``(next_index, t, events, count1, stop_code)``. An event whose
    time would pass ``t_stop`` is left unconsumed so a later call resumes
    with it.
    """
    n = s.shape[0]
    i = start
    while i < waits.shape[0]:
        t_new = t + waits[i]
        if t_new > t_stop:
            return i, t, events, count1, STOP_TIME
        t = t_new
        x = sites[i]
        if us[i] < flip_probability(s, nbr, n1, A, eps, x):
            count1 += apply_flip(s, nbr, n1, x)
        events += 1
        i += 1
        if count1 == 0 or count1 == n:
            return i, t, events, count1, STOP_FIXATED
        if events >= max_events:
            return i, t, events, count1, STOP_MAX_EVENTS
    return i, t, events, count1, STOP_BATCH


@njit(cache=True)
def absorb_component(s, nbr, in_comp, x):
    """Add ``x`` and every type-2 site connected to it through type-2 neighbors."""
    added = 0
    stack = [x]
    in_comp[x] = True
    added += 1
    while len(stack) > 0:
        y = stack.pop()
        for k in range(nbr.shape[1]):
            z = nbr[y, k]
            if s[z] == 2 and not in_comp[z]:
                in_comp[z] = True
                added += 1
                stack.append(z)
    return added


@njit(cache=True)
def run_component_batch(s, nbr, n1, A, eps, count1, in_comp, comp_size, t,
                        t_stop, events, max_events, waits, sites, us, start):
    """Like :func:`run_batch` while tracking the type-2 space-time component.

    A type-2 site leaves the component when it flips; a site turning 2 next
    to the component joins it together with its whole type-2 cluster.
    Returns ``(next_index, t, events, count1, comp_size, stop_code)``.
    """
    n = s.shape[0]
    i = start
    while i < waits.shape[0]:
        t_new = t + waits[i]
        if t_new > t_stop:
            return i, t, events, count1, comp_size, STOP_TIME
        t = t_new
        x = sites[i]
        if us[i] < flip_probability(s, nbr, n1, A, eps, x):
            count1 += apply_flip(s, nbr, n1, x)
            if s[x] == 1:
                if in_comp[x]:
                    in_comp[x] = False
                    comp_size -= 1
            else:
                for k in range(nbr.shape[1]):
                    if in_comp[nbr[x, k]]:
                        comp_size += absorb_component(s, nbr, in_comp, x)
                        break
        events += 1
        i += 1
        if comp_size == 0:
            return i, t, events, count1, comp_size, STOP_EXTINCT
        if count1 == 0 or count1 == n:
            return i, t, events, count1, comp_size, STOP_FIXATED
        if events >= max_events:
            return i, t, events, count1, comp_size, STOP_MAX_EVENTS
    return i, t, events, count1, comp_size, STOP_BATCH
