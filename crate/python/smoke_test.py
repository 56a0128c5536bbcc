"""Quick end-to-end check of the pynilideal extension.

Build and install first:

    pip install maturin
    cd crates/python && maturin build --release -o dist && pip install dist/*.whl

then run `python python/smoke_test.py`.
"""

import sys

import pynilideal as nl


def main():
    e = nl.Engine()
    print("rules:", len(e))

    checks = [
        ("L a1 a2 a2 a3 is zero", e.is_zero("L a1 a2 a2 a3")),
        ("L a1 a2 a3 is nonzero", not e.is_zero("L a1 a2 a3")),
        ("normal form of M P a1 R s1 Q a2", e.canonical_form("M P a1 R s1 Q a2") == "L a1 a2"),
        ("L a1 and L a2 differ", not e.equivalent("L a1", "L a2")),
    ]

    trace = e.zero_trace("L a1 a3 a3 a2")
    checks.append(("zero trace replays", trace is not None and e.replay(trace)))

    counts = [nl.count_squarefree(n) for n in range(1, 7)]
    checks.append(("square-free counts 1..6", counts == [3, 6, 12, 18, 30, 42]))
    checks.append(("morphism prefix is square-free", nl.find_squares(nl.gen_morphism(1000)) == []))

    results, _ = nl.verify(prop="9", max_len=5)
    for r in results:
        print(r.line)
    plain = [r for r in results if r.suite.endswith("[plain]")]
    checks.append(("prop9 passes without aux rules", all(r.passed for r in plain)))

    failed = 0
    for name, ok in checks:
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
