"""
Форматирование результатов для консоли.
"""
from app.database.models import BenchRun
from app.services.bench import BenchRecord
from app.services.chunker import ChunkErrorReport
from app.services.verification import CheckResult


def format_check(result: CheckResult) -> str:
    """Одна строка проверки verify."""
    icon = "✅" if result.passed else "❌"
    return f"{icon} {result.name:<20} {result.detail} ({result.elapsed:.2f} с)"


def format_verification(results: list[CheckResult]) -> str:
    lines = [format_check(r) for r in results]
    passed = sum(r.passed for r in results)
    summary = "🎉 Все проверки пройдены" if passed == len(results) else "⚠️ Есть проваленные проверки"
    lines.append(f"{summary}: {passed}/{len(results)}")
    return "\n".join(lines)


def format_report(report: ChunkErrorReport) -> str:
    """Ошибки по чанкам и по полному решению."""
    lines = ["📊 Ошибка по чанкам:"]
    for chunk in report.chunks:
        lines.append(f"   C{chunk.index:<3} n={chunk.count:<4} MSE={chunk.mse:.3e}  MAE={chunk.mae:.3e}")
    lines.append(f"━━━ полное решение: n={report.count}, MSE={report.full_mse:.3e}, MAE={report.full_mae:.3e}")
    return "\n".join(lines)


def format_bench_record(record: BenchRecord) -> str:
    return (
        f"⏱ {record.grid_rows}x{record.grid_cols} steps={record.steps} P={record.pred_step}: "
        f"численно {record.numerical_time_s * 1e3:.3f} мс, "
        f"пропагатор {record.propagator_time_s * 1e3:.3f} мс, "
        f"ratio={record.ratio:.2f}, MAE={record.mae:.2e}"
    )


def format_history(runs: list[BenchRun]) -> str:
    """История замеров из БД."""
    if not runs:
        return "📭 История бенчмарков пуста."
    lines = [f"📚 Последние замеры ({len(runs)}):"]
    for run in runs:
        when = run.created_at.strftime("%d.%m.%Y %H:%M")
        lines.append(
            f"   {when} [{run.propagator_kind}] {run.grid_rows}x{run.grid_cols} "
            f"steps={run.steps} P={run.pred_step} ratio={run.ratio:.2f} MAE={run.mae:.2e}"
        )
    return "\n".join(lines)
