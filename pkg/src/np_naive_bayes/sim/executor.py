"""
Replication executor for the Monte Carlo harness

Runs independent replications concurrently in worker threads, with
per-replication error capture and an execution history.
"""

import asyncio
import logging
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

MAX_HISTORY = 10_000


class ReplicationResult(BaseModel):
    """Outcome of one replication"""
    rep: int
    success: bool
    result: Any = None
    error: Optional[str] = None
    error_type: Optional[str] = None
    metadata: Dict[str, Any] = Field(default_factory=dict)


class ReplicationExecutor:
    """Executes replication jobs with bounded concurrency and error handling"""

    def __init__(self, max_concurrency: int = 1):
        """
        Initialize replication executor

        Args:
            max_concurrency: Number of replications allowed to run at once
        """
        if max_concurrency < 1:
            raise ValueError(f"max_concurrency must be >= 1, got {max_concurrency}")
        self.max_concurrency = max_concurrency
        self.execution_history: List[Dict[str, Any]] = []

    async def execute(self, rep: int, job: Callable[[], Any], semaphore: asyncio.Semaphore) -> ReplicationResult:
        """
        Run one replication in a worker thread

        Args:
            rep: Replication number
            job: Zero-argument callable producing the replication record
            semaphore: Concurrency bound shared by the batch

        Returns:
            ReplicationResult; failures are captured, never raised
        """
        async with semaphore:
            execution_start = datetime.now()
            try:
                value = await asyncio.to_thread(job)
                result = ReplicationResult(rep=rep, success=True, result=value)
            except Exception as e:
                logger.warning("Replication %d failed: %s: %s", rep, type(e).__name__, e)
                result = ReplicationResult(
                    rep=rep, success=False, error=str(e), error_type=type(e).__name__
                )
            execution_time = (datetime.now() - execution_start).total_seconds()
            result.metadata["execution_time"] = execution_time
            self._record_execution(result, execution_time)
            return result

    async def run_all(self, jobs: Sequence[Callable[[], Any]], first_rep: int = 0) -> List[ReplicationResult]:
        """Run every job; results come back ordered by replication number"""
        semaphore = asyncio.Semaphore(self.max_concurrency)
        tasks = [self.execute(first_rep + i, job, semaphore) for i, job in enumerate(jobs)]
        results = await asyncio.gather(*tasks)
        return sorted(results, key=lambda r: r.rep)

    def run(self, jobs: Sequence[Callable[[], Any]], first_rep: int = 0) -> List[ReplicationResult]:
        """Blocking wrapper around run_all"""
        return asyncio.run(self.run_all(jobs, first_rep))

    def _record_execution(self, result: ReplicationResult, execution_time: float) -> None:
        self.execution_history.append(
            {
                "rep": result.rep,
                "success": result.success,
                "execution_time": execution_time,
                "error_type": result.error_type,
                "timestamp": datetime.now().isoformat(),
                "error_message": result.error,
            }
        )
        if len(self.execution_history) > MAX_HISTORY:
            self.execution_history = self.execution_history[-MAX_HISTORY:]

    def get_execution_stats(self) -> Dict[str, Any]:
        """Get execution statistics"""
        if not self.execution_history:
            return {
                "total_executions": 0,
                "successful_executions": 0,
                "failed_executions": 0,
                "average_execution_time": 0,
                "failure_types": {},
            }

        total = len(self.execution_history)
        successful = sum(1 for record in self.execution_history if record["success"])
        times = [record["execution_time"] for record in self.execution_history]

        failure_types: Dict[str, int] = {}
        for record in self.execution_history:
            if not record["success"]:
                failure_types[record["error_type"]] = failure_types.get(record["error_type"], 0) + 1

        return {
            "total_executions": total,
            "successful_executions": successful,
            "failed_executions": total - successful,
            "success_rate": successful / total * 100,
            "average_execution_time": sum(times) / total,
            "failure_types": failure_types,
        }
