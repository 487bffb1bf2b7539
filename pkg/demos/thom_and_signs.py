"""Real roots described by Thom encodings, and exact sign queries at them."""
from symconn.polycore import UniPoly
from symconn.realroots import count_real_roots, isolate_roots, sign_at, thom_encodings

q = UniPoly.parse("T^3-3*T+1")
print("real roots of", q, ":", count_real_roots(q))
encs = thom_encodings(q)
for enc, iv in zip(encs, isolate_roots(q)):
    s = sign_at(q, enc, UniPoly.parse("T"))
    print(f"  encoding {enc}  isolating interval [{iv[0]}, {iv[1]}]  sign of T: {s:+d}")

# sqrt(2) is the root of T^2 - 2 where the derivative is positive
r2 = UniPoly.parse("T^2-2")
enc = [e for e in thom_encodings(r2) if sign_at(r2, e, UniPoly.parse("2*T")) > 0][0]
print("sign of T^2 - 3/2 at sqrt(2):", sign_at(r2, enc, UniPoly.parse("T^2-3/2")))
print("sign of T - 7/5 at sqrt(2):", sign_at(r2, enc, UniPoly.parse("T-7/5")))
