# Independent oracle computations for frozen test values.
import itertools, math
from math import log, log2, comb, factorial, sqrt

def multinomial_exact_nats(m, p):
    b = len(p); H = 0.0
    def rec(i, left, cur):
        nonlocal H
        if i == b - 1:
            x = cur + [left]
            pr = factorial(m)
            for xi, pi in zip(x, p):
                pr = pr / factorial(xi) * pi**xi
            if pr > 0: H -= pr * log(pr)
            return
        for xi in range(left + 1):
            rec(i + 1, left - xi, cur + [xi])
    rec(0, m, [])
    return H

def approx_nats(m, p):
    b = len(p)
    return 0.5 * ((b - 1) * log(2 * math.pi * m * math.e) + sum(log(x) for x in p)) + (3 * b - 2 - sum(1 / x for x in p)) / (12 * m)

for m in [2, 5, 10, 20]:
    p = [0.5, 0.25, 0.25]
    ex = multinomial_exact_nats(m, p); ap = approx_nats(m, p)
    print(f"m={m} exact_bits={ex/log(2):.6f} approx_bits={ap/log(2):.6f} err_bits={abs(ex-ap)/log(2):.6f}")
    # alternative: everything in log2 directly (correction term not rescaled)
    b=3; alt = 0.5*((b-1)*log2(2*math.pi*m*math.e)+sum(log2(x) for x in p)) + (3*b-2-sum(1/x for x in p))/(12*m)
    print(f"    alt(mixed-units)={alt:.6f} err={abs(ex/log(2)-alt):.6f}")
# worst case over b<=4 small probability vectors at m=10
import random
random.seed(1)
worst = 0
for b in [2,3,4]:
    for _ in range(50):
        w = [random.uniform(0.2,1) for _ in range(b)]; s=sum(w); p=[x/s for x in w]
        e = abs(multinomial_exact_nats(10,p)-approx_nats(10,p))/log(2)
        worst=max(worst,e)
print("worst err bits at m=10 (p_i>=~0.05):", worst)

# modularity K4 split 2/2 per-edge oracle
A = [[0 if i==j else 1 for j in range(4)] for i in range(4)]
part=[0,0,1,1]; k=[sum(r) for r in A]; m2=sum(k)
Q = sum((A[i][j]-k[i]*k[j]/m2) for i in range(4) for j in range(4) if part[i]==part[j])/m2
print("K4 2/2 modularity", Q)

# EMI brute over {2,1}-splits of 3 objects
def H(lbl):
    n=len(lbl); from collections import Counter
    return -sum(c/n*log2(c/n) for c in Counter(lbl).values())
def I(a,b):
    n=len(a); from collections import Counter
    ca,cb,cab=Counter(a),Counter(b),Counter(zip(a,b))
    return sum(c/n*log2((c/n)/((ca[x]/n)*(cb[y]/n))) for (x,y),c in cab.items())
splits=[[0,0,1],[0,1,0],[1,0,0]]
emi=sum(I(u,v) for u in splits for v in splits)/9
print("EMI {2,1}",emi, "I distinct", I(splits[0],splits[1]), "AMI", (I(splits[0],splits[1])-emi)/(H(splits[0])-emi))
# Table S7
parts=[[0,0,0],[0,0,1],[0,1,0],[1,0,0],[0,1,2]]
def nmi(u,v):
    hu,hv=H(u),H(v)
    if hu*hv==0: return 1.0 if (hu==0 and hv==0) else 0.0
    return I(u,v)/sqrt(hu*hv)
for u in parts: print(["%.4f"%nmi(u,v) for v in parts], "mean %.4f"%(sum(nmi(u,v) for v in parts)/5))
print("log2 3", log2(3))
# bell
B=[1]
for n in range(12):
    B.append(sum(comb(n,k)*B[k] for k in range(n+1)))
print("bell", B)
