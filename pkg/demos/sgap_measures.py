"""S-gap shifts: entropy from a root equation, measures from a recursion.

An S-gap shift keeps exactly the binary sequences whose runs of 0s between
consecutive 1s have lengths in S.  Its growth rate is the unique root
lambda > 1 of sum over S of lambda^(-n-1) = 1, and the measure of every
cylinder is an integer combination of 1 and mu(1) in powers of 1/lambda.
"""

import math

from symshift import SGapSet, SGapShift, count_words, sgap_lambda, sgap_mu, sgap_mu1, sgap_mu_oracle

for gaps in [SGapSet((0, 1)), SGapSet((0, 2, 3)), SGapSet((), 1), SGapSet((2,), 5)]:
    spec = SGapShift(gaps)
    lam = sgap_lambda(gaps)
    print(f"== S = {gaps.describe()} ==")
    print(f"lambda = {lam:.10f}, h = {math.log(lam):.10f}")
    print(f"mu(1) = {sgap_mu1(gaps):.10f}")
    print("counts:", [count_words(spec, n) for n in range(1, 9)])
    for w in ["1", "10", "101", "1001"]:
        value, cert = sgap_mu(gaps, w)
        check = sgap_mu_oracle(gaps, w)
        print(
            f"  mu({w}) = {value:.10f}  (oracle {check:.10f}, "
            f"certificate offset={cert.offset}, coeffs={list(cert.coeffs)})"
        )
    print()

print("The certificate says mu(w) = offset + mu(1) * f(1/lambda) with an")
print("integer polynomial f; two independent computations agree above.")
