from vaes.suite import ALL_CHECKS, run_suite


def test_smoke_level_passes():
    report = run_suite(level="smoke")
    assert report.passed, "\n".join(report.lines())
    # smoke runs every check; the meter calibration joins at full level only
    assert len(report.results) == len(ALL_CHECKS)


def test_seed_offset_is_reproducible():
    r1 = run_suite(level="smoke", seed=123)
    r2 = run_suite(level="smoke", seed=123)
    assert [c.detail for c in r1.results] == [c.detail for c in r2.results]


def test_lines_format():
    report = run_suite(level="smoke")
    for line in report.lines():
        assert line.startswith(("PASS ", "FAIL "))
