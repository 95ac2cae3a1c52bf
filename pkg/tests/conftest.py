"""Echo the acceptance verdict lines in the terminal summary.

Stdout from passing tests is captured and hidden, but the one-line
verdicts from test_acceptance.py are the headline output of the suite,
so collect them and print them at the end of the run.
"""

VERDICTS = []


def record_verdict(line):
    VERDICTS.append(line)


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
