"""Shared pytest configuration: hypothesis profile and acceptance reporting."""

from hypothesis import settings

settings.register_profile("exact", deadline=None, max_examples=40)
settings.load_profile("exact")

# criterion label per acceptance test, used for the end-of-run report
ACCEPTANCE_LABELS = {
    "test_criterion_1_oracle_equivalence": "criterion 1 (oracle equivalence, r<=2)",
    "test_criterion_1_oracle_rank3_slow": "criterion 1 (oracle equivalence, r=3 tier)",
    "test_criterion_2_rank1_closed_form": "criterion 2 (rank-1 closed form)",
    "test_criterion_3_all_maps_reconstruction": "criterion 3 (all-maps reconstruction, genus 0)",
    "test_criterion_4_two_route_canonical": "criterion 4 (two-route canonical invariants)",
    "test_criterion_5_filtration_exponent": "criterion 5 (filtration exponent identity)",
    "test_criterion_6_plethystic_algebra": "criterion 6 (plethystic Exp/Log algebra)",
    "test_criterion_7_rank1_volumes": "criterion 7 (rank-1 moduli volumes)",
    "test_criterion_8_conjecture_report": "criterion 8 (d-independence conjecture report)",
    "test_criterion_9_determinism": "criterion 9 (byte-determinism of compute)",
}


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            name = rep.nodeid.split("::")[-1]
            label = ACCEPTANCE_LABELS.get(name)
            if label:
                status = "PASS" if outcome == "passed" else "FAIL"
                lines.append((label, status))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for label, status in sorted(lines):
            terminalreporter.write_line(f"{status} {label}")
