"""
Quadratic fields, ideals and the extended Liouville function
============================================================

Elements of O_K are written in the integral basis 1, w.  Ideals are kept in
Hermite normal form, rational primes split by Dedekind-Kummer, and
lambda_ext adds up inertia degrees mod 4 so that on rational integers it
agrees with lambda.
"""

from chowlakit import Ideal, QuadField, factor_ideal, factor_prime, form_to_norm, lambda_K, lambda_ext
from chowlakit import liouville

K = QuadField(-1)
for p in (2, 3, 5, 13):
    s = factor_prime(K, p)
    print(f"{p:2d} is {s.kind:8s}", [str(q.ideal) for q in s.primes])

# (6) = <1+i>^2 (3)
print("(6) =", [(str(q.ideal), e) for q, e in factor_ideal(Ideal.rational(K, 6))])

# i**k for the exponent agrees with lambda on rational ideals
for d in (-1, 5, -23):
    F = QuadField(d)
    ok = all((1 if lambda_ext(Ideal.rational(F, n)) == 0 else -1) == liouville(n) for n in range(1, 500))
    print(f"Q(sqrt({d})): restriction law holds for n < 500: {ok}")

# the sign (-1)^(number of prime factors) is a different function
P = factor_prime(K, 5).primes[0].ideal
print("lambda_ext(P5) =", lambda_ext(P), " lambda_K(P5) =", lambda_K(P))

# a binary quadratic form as a norm form
fn = form_to_norm(2, 3, 4)
print(f"2x^2+3xy+4y^2: field {fn.field}, alpha2 = {fn.alpha2}, index {fn.index}")
print("2*Q(x,y) == N(x*alpha1 + y*alpha2) on |x|,|y| <= 30:", fn.check_identity(2, 3, 4, 30))
