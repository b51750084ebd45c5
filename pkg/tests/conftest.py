import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


ACCEPTANCE: dict = {}


def record(number: int, status: str, detail: str = "") -> None:
    ACCEPTANCE[number] = (status, detail)
    print(f"criterion {number:2d}: {status} {detail}")


def pytest_runtest_logreport(report):
    # a criterion that raised before recording is a failure
    if report.when == "call" and report.failed and "test_acceptance" in report.nodeid:
        name = report.nodeid.rsplit("::", 1)[-1]
        if name.startswith("test_criterion_"):
            n = int(name.split("_")[2])
            ACCEPTANCE[n] = ("FAIL", str(report.longrepr).splitlines()[-1][:160])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{status:4} criterion {n:2d}  {detail}")
