# src/harness/runner.py
# --- agent_meta ---
# role: harness-runner
# owner: @backend
# contract: Пул потоков для заданий сетки; результаты сливаются по ключу задания, а не по порядку завершения
# last_reviewed: 2026-10-15
# interfaces:
#   - JobRunner.execute(jobs) -> list[(Job, JobOutput, float)]
# dependencies:
#   - concurrent.futures.ThreadPoolExecutor
# --- /agent_meta ---

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

from src.utils import get_logger, timed

from .config import get_harness_settings
from .models import Job, JobOutput

JobRecord = Tuple[Job, JobOutput, float]


class JobRunner:
    """Исполнитель заданий сценария.

    Размер пула ограничен LGT_THREADS; задания сортируются по ключу до запуска,
    а pool.map возвращает результаты в порядке подачи.
    """

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max_workers or get_harness_settings().threads
        self._log = get_logger(f"{__name__}.JobRunner")

    def _run_one(self, job: Job) -> JobRecord:
        with timed(self._log, f"job {job.key!r}") as elapsed:
            output = job.run()
        return job, output, elapsed[0]

    def execute(self, jobs: Sequence[Job]) -> List[JobRecord]:
        ordered = sorted(jobs, key=lambda j: j.key)
        keys = [j.key for j in ordered]
        if len(set(keys)) != len(keys):
            raise ValueError("job keys must be unique within a scenario")
        workers = min(self.max_workers, len(ordered)) if ordered else 1
        self._log.info("Запуск %d заданий, потоков %d", len(ordered), workers)
        if workers <= 1:
            return [self._run_one(job) for job in ordered]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(self._run_one, ordered))
