import cmath
import math

# criterion id -> list of (ok, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def phasor_mean(P, y):
    """Independent oracle: plain cmath loop over the P phasors."""
    return sum(cmath.exp(2j * math.pi * y * j) for j in range(P)) / P


def cosine_sum(P, m):
    return math.fsum(math.cos(2 * math.pi * m * j / P) for j in range(P))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda s: (int(s[2:]), s)):
        parts = ACCEPTANCE[key]
        ok = all(p[0] for p in parts)
        detail = "; ".join(p[1] for p in parts)
        terminalreporter.write_line(f"{key:<5} {'PASS' if ok else 'FAIL'}  {detail}")
