from sda_toolkit.privacy.audit import (
    AuditReport,
    audit,
    degree_spread_table,
    violation_curve,
)

__all__ = ["AuditReport", "audit", "degree_spread_table", "violation_curve"]
