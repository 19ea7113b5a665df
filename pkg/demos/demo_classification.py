"""Classify defining sequences and distinguish manifolds by a prime.

Run with:  python3 demos/demo_classification.py
"""

from genusone import (
    DefiningSequence,
    classify_double3,
    distinguish_by_prime,
    gabai,
    mcmillan,
    verify_certificate,
)

gabai_two = DefiningSequence(prefix=(), period=(gabai(2),), name="all gabai-2")
mcmillan_two = DefiningSequence(prefix=(), period=(mcmillan(2),), name="all mcmillan-2")
mixed = DefiningSequence(prefix=(gabai(2),), period=(mcmillan(2),), name="mixed")

for seq in (gabai_two, mcmillan_two, mixed):
    cert = classify_double3(seq, depth=4, horizon=4)
    print(f"{seq.name}: {cert.verdict.value}")
    if cert.evidence["kind"] == "divergence":
        bounds = [row["bound"] for row in cert.evidence["trace"]]
        print("  interlacing lower bounds per level:", bounds)
    elif cert.evidence["kind"] == "exhaustion":
        print("  verified nestings:", len(cert.evidence["steps"]))
    else:
        print(" ", cert.evidence["reason"])
    print("  certificate replays bit-identically:", verify_certificate(cert.to_doc()))
    print()

gabai_three = DefiningSequence(prefix=(), period=(gabai(3),), name="all gabai-3")
cert = distinguish_by_prime(gabai_two, gabai_three, 3, horizon=6)
print(f"{gabai_two.name} vs {gabai_three.name} at p=3: {cert.verdict.value}")
print("  witness sequence:", cert.evidence.get("witness"))
print("  divisible levels up to the horizon:", cert.evidence["b"]["levels_up_to_horizon"])
