"""명령줄 인터페이스

    python cli.py extract-claims policy.html
    python cli.py extract-evidence decoded/yr --bound 5
    python cli.py check policy_claim.jsonl evidence_claim.jsonl --format markdown
    python cli.py corpus-stats manifest.json --jobs 4 --xlsx stats.xlsx

종료 코드: 0 성공, 1 입출력/파싱 실패, 2 모호한 정책, 3 증거 없음, 64 사용법/설정 오류
"""

import json
import sys
from pathlib import Path

import click

from analyzer.claim_checker import check
from analyzer.pipeline import analyze_app, analyze_policy, corpus_stats
from analyzer.signatures import load_sigdb
from apk.layout import load_widget_table
from config.run_config import RunConfig, load_manifest
from config.settings import (
    EXIT_IO_ERROR,
    EXIT_NO_EVIDENCE,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VAGUE_POLICY,
    OUTPUT_FORMATS,
)
from core.claims import CollectionClaim
from core.errors import (
    AppLayoutInvalid,
    ConfigInvalid,
    EmptyPolicy,
    InvalidClaim,
    LexiconInvalid,
    ManifestInvalid,
    ParseError,
    ProvenanceError,
    SignatureDbInvalid,
)
from core.template import parse_claim
from exporter.excel_exporter import ExcelExporter
from exporter.report_renderer import (
    ReportFormat,
    dump_json,
    render_app_results,
    render_corpus_stats,
    render_policy_results,
    render_report,
)
from exporter.word_exporter import WordExporter
from policy.lexicon import load_lexicon
from utils.logger import configure_logging
from utils.validators import validate_app_dir


class CliError(click.ClickException):
    def __init__(self, message: str, exit_code: int = EXIT_IO_ERROR):
        super().__init__(message)
        self.exit_code = exit_code


class ClaimCheckGroup(click.Group):
    """명령 반환값을 종료 코드로 쓰고, click 사용법 오류는 64로 바꾼다"""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(
                args=args,
                prog_name=prog_name,
                complete_var=complete_var,
                standalone_mode=False,
                **extra,
            )
            code = rv if isinstance(rv, int) else EXIT_OK
        except click.UsageError as e:
            e.show()
            code = EXIT_USAGE
        except click.ClickException as e:
            e.show()
            code = e.exit_code
        except click.Abort:
            click.echo("중단되었습니다.", err=True)
            code = EXIT_IO_ERROR
        if standalone_mode:
            sys.exit(code)
        return code


def _emit(text: str, out: str | None):
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise CliError(f"출력 파일을 쓸 수 없습니다: {out} ({e.strerror})") from e
    else:
        click.echo(text, nl=False)


def _resolve_config(ctx: click.Context, **overrides) -> RunConfig:
    try:
        return ctx.obj["config"].with_overrides(**overrides).validate()
    except ConfigInvalid as e:
        raise CliError(str(e), EXIT_USAGE) from e


def _load_lexicon(config: RunConfig):
    try:
        return load_lexicon(config.lexicon_path)
    except LexiconInvalid as e:
        raise CliError(str(e), EXIT_USAGE) from e


def _load_sigdb(config: RunConfig):
    try:
        return load_sigdb(config.sigdb_path)
    except SignatureDbInvalid as e:
        raise CliError(str(e), EXIT_USAGE) from e


def _load_widgets(config: RunConfig):
    try:
        return load_widget_table(config.widgets_path)
    except ConfigInvalid as e:
        raise CliError(str(e), EXIT_USAGE) from e


def _path_option(*names, help):
    return click.option(*names, type=click.Path(dir_okay=False, path_type=Path), default=None, help=help)


_format_option = click.option(
    "--format", "fmt", type=click.Choice(OUTPUT_FORMATS), default=None, help="출력 형식"
)
_out_option = click.option("--out", type=click.Path(dir_okay=False), default=None, help="출력 파일 (기본: stdout)")
_bound_option = click.option("--bound", type=int, default=None, help="콜백 → DCM 최대 호출 간선 수 (기본 5)")


@click.group(cls=ClaimCheckGroup)
@click.option("--verbose", "-v", is_flag=True, help="진행 로그 출력 (stderr)")
@click.option("--config", "config_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="JSON 실행 설정 파일 (명령줄 플래그가 우선)")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, config_path: Path | None):
    """개인정보 처리방침의 상호작용 데이터 수집 클레임을 앱 정적 분석 증거와 대조합니다."""
    configure_logging(verbose)
    try:
        config = RunConfig.from_file(config_path) if config_path else RunConfig()
    except ConfigInvalid as e:
        raise CliError(str(e), EXIT_USAGE) from e
    ctx.obj = {"config": config, "verbose": verbose}


@cli.command("extract-claims")
@click.argument("policy_files", nargs=-1, required=True, type=click.Path(path_type=Path))
@_path_option("--lexicon", help="용어 사전 JSON")
@_format_option
@_out_option
@click.pass_context
def extract_claims(ctx, policy_files, lexicon, fmt, out) -> int:
    """정책 문서(HTML/텍스트)에서 수집 문장과 정책 클레임 추출"""
    config = _resolve_config(ctx, lexicon_path=lexicon, output_format=fmt)
    lex = _load_lexicon(config)

    results, failed = [], False
    for path in policy_files:
        try:
            results.append(analyze_policy(path, lex))
        except OSError as e:
            click.echo(f"오류: 정책 파일을 읽을 수 없습니다: {path} ({e.strerror})", err=True)
            failed = True
        except EmptyPolicy as e:
            click.echo(f"오류: {path}: {e}", err=True)
            failed = True

    _emit(render_policy_results(results, ReportFormat(config.output_format)), out)
    if failed:
        return EXIT_IO_ERROR
    if any(r.vague_only for r in results):
        return EXIT_VAGUE_POLICY
    return EXIT_OK


@cli.command("extract-evidence")
@click.argument("app_dirs", nargs=-1, required=True, type=click.Path(path_type=Path))
@_path_option("--sigdb", help="DCM 시그니처 DB JSON")
@_path_option("--widgets", help="위젯 분류 오버라이드 JSON")
@_bound_option
@_format_option
@_out_option
@click.option("--dump-model", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="앱 모델 JSON을 저장할 디렉터리")
@click.pass_context
def extract_evidence(ctx, app_dirs, sigdb, widgets, bound, fmt, out, dump_model) -> int:
    """apktool 디렉터리에서 수집 증거 레코드와 증거 클레임 추출"""
    config = _resolve_config(ctx, sigdb_path=sigdb, widgets_path=widgets, reachability_bound=bound, output_format=fmt)
    db = _load_sigdb(config)
    table = _load_widgets(config)

    results, failed = [], False
    for app_dir in app_dirs:
        valid, message = validate_app_dir(app_dir)
        if not valid:
            click.echo(f"오류: {message}", err=True)
            failed = True
            continue
        try:
            results.append(analyze_app(app_dir, db, config.reachability_bound, table))
        except (AppLayoutInvalid, ManifestInvalid, ParseError, OSError) as e:
            click.echo(f"오류: {app_dir}: {e}", err=True)
            failed = True

    if dump_model is not None:
        try:
            dump_model.mkdir(parents=True, exist_ok=True)
            for result in results:
                (dump_model / f"{result.app.name}.model.json").write_text(
                    dump_json(result.app.to_dict()), encoding="utf-8"
                )
        except OSError as e:
            raise CliError(f"모델 파일을 쓸 수 없습니다: {dump_model} ({e.strerror})") from e

    _emit(render_app_results(results, ReportFormat(config.output_format)), out)
    if failed:
        return EXIT_IO_ERROR
    if any(r.no_evidence for r in results):
        return EXIT_NO_EVIDENCE
    return EXIT_OK


@cli.command("check")
@click.argument("policy_claim_file", type=click.Path(path_type=Path))
@click.argument("evidence_claim_file", type=click.Path(path_type=Path))
@_format_option
@_out_option
@click.option("--docx", type=click.Path(dir_okay=False), default=None, help="Word 리포트 저장 경로")
@click.pass_context
def check_claims(ctx, policy_claim_file, evidence_claim_file, fmt, out, docx) -> int:
    """정책 클레임과 증거 클레임을 비교해 검증 리포트 출력

    클레임 파일: CollectionClaim JSON, extract-* 명령의 JSON Lines 출력, 또는 표준 클레임 문장.
    """
    config = _resolve_config(ctx, output_format=fmt)
    policy, citations, _ = load_claim_file(policy_claim_file, "policy_claim")
    evidence, _, app_name = load_claim_file(evidence_claim_file, "evidence_claim")
    if evidence is None:
        click.echo(f"오류: 증거 클레임이 없습니다: {evidence_claim_file}", err=True)
        return EXIT_NO_EVIDENCE

    try:
        report = check(policy, evidence, citations, app_name=app_name)
    except ProvenanceError as e:
        raise CliError(str(e)) from e

    if docx:
        try:
            Path(docx).write_bytes(WordExporter().generate(report))
        except OSError as e:
            raise CliError(f"Word 파일을 쓸 수 없습니다: {docx} ({e.strerror})") from e

    # 모호한 정책도 리포트는 완성되므로 0
    _emit(render_report(report, ReportFormat(config.output_format)), out)
    return EXIT_OK


@cli.command("corpus-stats")
@click.argument("manifest", required=False, type=click.Path(path_type=Path))
@_path_option("--lexicon", help="용어 사전 JSON")
@_path_option("--sigdb", help="DCM 시그니처 DB JSON")
@_path_option("--widgets", help="위젯 분류 오버라이드 JSON")
@_bound_option
@click.option("--jobs", type=int, default=None, help="작업 프로세스 수")
@_format_option
@_out_option
@click.option("--xlsx", type=click.Path(dir_okay=False), default=None, help="Excel 통계 저장 경로")
@click.option("--composite", is_flag=True, default=False, help="Composite gesture 행 포함")
@click.pass_context
def corpus_stats_cmd(ctx, manifest, lexicon, sigdb, widgets, bound, jobs, fmt, out, xlsx, composite) -> int:
    """매니페스트의 정책/앱 전체에 대한 통계 (용어/동사 빈도, 문장 분류, UI 타입별 수집)"""
    entries = None
    if manifest is not None:
        try:
            entries = load_manifest(manifest)
        except ConfigInvalid as e:
            raise CliError(str(e), EXIT_USAGE) from e
    config = _resolve_config(
        ctx,
        lexicon_path=lexicon,
        sigdb_path=sigdb,
        widgets_path=widgets,
        reachability_bound=bound,
        jobs=jobs,
        output_format=fmt,
        entries=entries,
        include_composite=composite or None,
    )
    if not config.entries:
        raise click.UsageError("매니페스트가 필요합니다 (인자 또는 --config의 manifest).")
    _load_lexicon(config)
    _load_sigdb(config)
    _load_widgets(config)

    stats = corpus_stats(config, verbose=ctx.obj["verbose"])

    if xlsx:
        try:
            Path(xlsx).write_bytes(ExcelExporter().generate(stats))
        except OSError as e:
            raise CliError(f"Excel 파일을 쓸 수 없습니다: {xlsx} ({e.strerror})") from e

    _emit(render_corpus_stats(stats, ReportFormat(config.output_format)), out)
    return EXIT_OK


def load_claim_file(path: Path, record: str) -> tuple[CollectionClaim | None, dict[str, str], str | None]:
    """클레임 파일 → (클레임, 인용 문장, 앱 이름).

    - JSON 객체: CollectionClaim, 또는 {"record": ..., "claim": ...} 한 줄
    - JSON Lines: extract-* 출력. record 줄이 정확히 하나여야 하며 finding 줄은 인용 문장이 된다
    - 그 밖의 텍스트: 표준 클레임 문장
    클레임이 null이면 (모호한 정책 / 증거 없음) None.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CliError(f"클레임 파일을 읽을 수 없습니다: {path} ({e.strerror})") from e

    try:
        if not text.lstrip().startswith("{"):
            return parse_claim(text.strip()), {}, None

        try:
            rows = [json.loads(text)]
        except json.JSONDecodeError:
            rows = [json.loads(line) for line in text.splitlines() if line.strip()]

        citations = {
            f"{row['doc_id']}#{row['sentence_index']}": row.get("text", "")
            for row in rows if isinstance(row, dict) and row.get("record") == "finding"
        }
        claim_rows = [row for row in rows if isinstance(row, dict) and "claim" in row and "record" in row]
        if not claim_rows:
            if len(rows) != 1:
                raise InvalidClaim("클레임 줄이 없습니다.")
            return CollectionClaim.from_dict(rows[0]), citations, None
        if len(claim_rows) != 1:
            raise InvalidClaim(f"클레임 줄이 {len(claim_rows)}개입니다 (하나만 있어야 합니다).")
        row = claim_rows[0]
        if row["record"] != record:
            raise InvalidClaim(f"{record} 줄이 아닙니다: {row['record']}")
        claim = CollectionClaim.from_dict(row["claim"]) if row["claim"] is not None else None
        return claim, citations, row.get("app")
    except json.JSONDecodeError as e:
        raise CliError(f"JSON 형식 오류: {path} ({e.msg}, {e.lineno}행)") from e
    except (InvalidClaim, ParseError, KeyError, TypeError) as e:
        raise CliError(f"클레임 파일 형식 오류: {path} ({e})") from e


if __name__ == "__main__":
    cli()
