from oracle_values import multinomial_exact_nats, approx_nats
from math import log
cases = [[0.5,0.25,0.25],[0.5,0.5],[0.25]*4,[0.4,0.3,0.2,0.1],[0.7,0.3],[0.6,0.2,0.2],[1/3]*3]
for p in cases:
    errs=[abs(multinomial_exact_nats(m,p)-approx_nats(m,p))/log(2) for m in range(1,11)]
    print(p, " ".join("%.4f"%e for e in errs))
