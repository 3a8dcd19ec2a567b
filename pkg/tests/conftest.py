"""Shared pytest plumbing for the suite.

The acceptance tests report one human-readable pass/fail line per behavior;
those lines go through the terminal reporter so they stay visible in the run
log even under output capture.
"""

_config = None


def pytest_configure(config):
    global _config
    _config = config


def write_report_line(text: str) -> None:
    terminal = (
        _config.pluginmanager.get_plugin("terminalreporter") if _config else None
    )
    if terminal is not None:
        terminal.write_line(text)
    else:
        print(text)
