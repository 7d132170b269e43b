# Recounts encoding sizes straight from the axiom definitions, independently of the C++ encoder.
from itertools import combinations, product
def recount(m, n, k, weak_eff, mode="subset", prop="hare"):
    C = range(m)
    ballots = [frozenset(s) for r in range(1, m) for s in combinations(C, r)]
    committees = [frozenset(s) for s in combinations(C, k)]
    def party_list(p):
        return all(a == b or not (a & b) for a in p for b in p)
    def allowed(p):
        out = []
        union = frozenset().union(*p)
        for w in committees:
            ok = True
            if prop == "hare" and party_list(p):
                for c in C:
                    cnt = sum(1 for b in p if b == frozenset([c]))
                    if cnt and cnt * k >= n and c not in w: ok = False
            if prop == "jr" and party_list(p):
                for a in set(p):
                    if p.count(a) * k >= n and not (a & w): ok = False
            if weak_eff and len(union) >= k and not w <= union: ok = False
            if ok: out.append(w)
        return out
    profiles = [p for p in product(ballots, repeat=n) if len(frozenset().union(*p)) >= k]
    A = {p: allowed(p) for p in profiles}
    nv = sum(len(a) for a in A.values())
    tot = len(profiles)
    uniq = sum(len(a) * (len(a) - 1) // 2 for a in A.values())
    sp = 0; spg = 0
    for p in profiles:
        for i in range(n):
            for b in ballots:
                if b == p[i]: continue
                if mode == "subset" and not b < p[i]: continue
                q = p[:i] + (b,) + p[i+1:]
                if q not in A: continue
                cnt = sum(1 for w in A[p] for w2 in A[q] if (w2 & p[i]) > (w & p[i]))
                sp += cnt; spg += cnt > 0
    return dict(profiles=tot, vars=nv, totality=tot, uniqueness=uniq, sp_clauses=sp, sp_groups=spg,
                clauses=tot + uniq + sp, groups=tot + sum(1 for a in A.values() if len(a) > 1) + spg)
print("4,3,3 hare subset we", recount(4, 3, 3, True))
print("4,3,3 hare subset", recount(4, 3, 3, False))
print("3,2,2 hare subset we", recount(3, 2, 2, True))
