"""
Simulation designs, oracle risks and the Monte Carlo replication harness
"""

from .executor import ReplicationExecutor, ReplicationResult
from .generators import SIGNAL, Example, gen_example1, gen_example2, gen_example2_with_components
from .harness import SimSpec, ScreeningRow, replication_rng, run_mc, run_replication, screening_table
from .oracle import OracleRisks, closed_form_ex1, monte_carlo_oracle, oracle_log_ratio, oracle_risks
from .report import McReport, ReplicationRecord, SummaryStat, aggregate, write_report

__all__ = [
    "Example",
    "McReport",
    "OracleRisks",
    "ReplicationExecutor",
    "ReplicationRecord",
    "ReplicationResult",
    "SIGNAL",
    "ScreeningRow",
    "SimSpec",
    "SummaryStat",
    "aggregate",
    "closed_form_ex1",
    "gen_example1",
    "gen_example2",
    "gen_example2_with_components",
    "monte_carlo_oracle",
    "oracle_log_ratio",
    "oracle_risks",
    "replication_rng",
    "run_mc",
    "run_replication",
    "screening_table",
    "write_report",
]
