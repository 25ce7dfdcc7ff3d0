import pytest

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: (int(s.split()[0].rstrip("ab")), s)):
        terminalreporter.write_line(line)


@pytest.fixture
def record_acceptance():
    def record(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"{number:<3} {status}  {title}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record
