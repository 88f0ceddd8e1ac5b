# Freeing threshold of the neoSBM on two triangles joined by a bridge, with
# one node carrying the other triangle's label.
#
# L_base is the Bernoulli SBM log-likelihood in nats over ordered node pairs
# (self pairs included), omega_rs = m_rs / (n_r n_s). A configuration with
# q free nodes beats the metadata partition once q*psi > L_M - L_a, so the
# first freeing happens at psi* = min_a (L_M - L_a) / q_a.
import itertools
from math import log, exp

N = 6
edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]
meta = [0, 0, 1, 1, 1, 1]  # node 2 mislabeled

def loglik(a, K=2):
    n = [a.count(r) for r in range(K)]
    m = [[0] * K for _ in range(K)]
    for u, v in edges:
        m[a[u]][a[v]] += 1
        m[a[v]][a[u]] += 1
    L = 0.0
    for r in range(K):
        for s in range(K):
            nn = n[r] * n[s]
            if nn == 0:
                continue
            w = m[r][s] / nn
            if 0 < m[r][s]:
                L += 0.5 * m[r][s] * log(w)
            if m[r][s] < nn:
                L += 0.5 * (nn - m[r][s]) * log(1 - w)
    return L

LM = loglik(meta)
best = None
for a in itertools.product(range(2), repeat=N):
    a = list(a)
    q = sum(x != y for x, y in zip(a, meta))
    if q == 0:
        continue
    gain = (loglik(a) - LM) / q
    if best is None or gain > best[0]:
        best = (gain, q, a)
dL, q, a = best
print("L_M", repr(LM))
print("best gain per node", repr(dL), "q", q, "assignment", a)
print("theta*", repr(1 / (1 + exp(dL))))
