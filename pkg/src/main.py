"""
=============================================================================
Basilica Schreier 圖 zeta 工具 - 主程式 (main.py)
=============================================================================
本程式是命令列入口，負責解析參數、設定日誌，並把各子命令轉交給計算模組：

子命令：
  1. schreier      輸出 Γ_n（DOT 或 JSON）
  2. product       輸出 Γ_n ⓖ Γ_r 或 Γ_n ⓩ C₄，並附上同構 / 對合證明檔
  3. zeta          Ihara zeta 倒數、Artin L 倒數、分解與整除檢查（JSON 報表）
  4. cover         覆蓋驗證、葉表、Frobenius 置換、單值群階與正規性
  5. verify-paper  一次重現所有參考數值，逐項列出 pass / fail

結束碼：
  0 成功；2 參數錯誤；3 驗證失敗（圖或覆蓋不合法、檢查不通過）；4 超過資源上限

全域參數：
  --log       將日誌另外寫入 logs/YYYY_MM_DD.txt
  --verbose   在 stderr 顯示 DEBUG 訊息

標準輸出只放命令結果，相同參數的兩次執行會輸出相同的位元組。
=============================================================================
"""
import sys
import os
# 設定標準輸出編碼為 UTF-8
os.environ['PYTHONIOENCODING'] = 'utf-8'
if hasattr(sys.stdout, 'reconfigure'):
    sys.stdout.reconfigure(encoding='utf-8', errors='replace')
if hasattr(sys.stderr, 'reconfigure'):
    sys.stderr.reconfigure(encoding='utf-8', errors='replace')

# ===== 標準函式庫與第三方套件匯入 =====
import argparse                               # 命令列參數解析
import json                                   # JSON 報表輸出
import logging                                # 日誌
from datetime import datetime                 # 日誌檔名與啟動時間

import pandas as pd                           # verify-paper 結果表

# ===== 自訂模組匯入 =====
from basilica import build_schreier           # Γ_n
from config import GlobalConfig               # 全域配置（上限、輸出目錄）
from constants import Constants               # 預設頂點 / 葉順序
from covering import cover_report, cycle_notation, frobenius_permutations, monodromy_order, verify_covering
from errors import CapExceededError, CoverError, GraphError, NotDivisibleError
from graph_spec import build_cover, build_graph, parse_graph_spec
from multigraph import adjacency_matrix, export_dot, resolve_order, to_json_text, verify_isomorphism, vertex_label
from products import c4, generalized_replacement, replacement_isomorphism, schreier_zigzag, zigzag_rotation_table
from reference_suite import GROUPS, all_passed, run_suite
from report_export import export_excel
from zeta import (
    artin_matrices,
    artin_reciprocal,
    characters,
    deck_group,
    divisibility_check,
    factorization_check,
    ihara_reciprocal,
    nonbacktracking_reciprocal,
)

logger = logging.getLogger("zetagraph")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CHECK = 3
EXIT_CAP = 4


class CheckFailed(Exception):
    """檢查不通過：結果已輸出，但結束碼為 3。"""


# ===== 日誌 =====

def setup_logging(log_to_file=False, verbose=False):
    """
    設定日誌：stderr 顯示 WARNING（--verbose 時 DEBUG）；
    --log 時另外寫入 logs/年_月_日.txt，並先寫入啟動時間。

    Returns:
        str | None: 日誌檔路徑
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    root.setLevel(logging.DEBUG)
    formatter = logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s")

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(logging.DEBUG if verbose else logging.WARNING)
    console.setFormatter(formatter)
    root.addHandler(console)

    if not log_to_file:
        return None
    logs_dir = GlobalConfig().get("log_dir", "logs")
    os.makedirs(logs_dir, exist_ok=True)
    today = datetime.now()
    log_filepath = os.path.join(logs_dir, f"{today.year}_{today.month:02d}_{today.day:02d}.txt")
    with open(log_filepath, 'a', encoding='utf-8') as log_file:
        log_file.write(f"\n{'=' * 50}\n")
        log_file.write(f"start: {today.strftime('%Y-%m-%d %H:%M:%S')}\n")
        log_file.write(f"{'=' * 50}\n")
    file_handler = logging.FileHandler(log_filepath, encoding='utf-8')
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)
    root.addHandler(file_handler)
    logger.info("logging to %s", log_filepath)
    return log_filepath


# ===== 輸出 =====

def _dump(doc):
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _write(text, output=None):
    """寫到檔案或標準輸出。"""
    if output:
        parent = os.path.dirname(output)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(output, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        logger.info("wrote %s", output)
    else:
        sys.stdout.write(text)


def _serialize_graph(G, fmt):
    return export_dot(G) if fmt == "dot" else to_json_text(G)


def _matrix_strings(M):
    return [[str(int(x)) for x in row] for row in M]


# ===== 子命令 =====

def cmd_schreier(args):
    G = build_schreier(args.level)
    _write(_serialize_graph(G, args.format), args.output)
    return EXIT_OK


def _replacement_certificate(n, r, G):
    target = build_schreier(n + r)
    check = verify_isomorphism(G, target, replacement_isomorphism, respect_ports=True)
    return {
        "product": G.name,
        "isomorphic_to": target.name,
        "map": "f(v,u) = uv",
        "respect_ports": True,
        "isomorphic": check.ok,
        "reason": check.reason,
        "detail": check.detail,
        "pairs": [[vertex_label(x), replacement_isomorphism(x)] for x in G.vertices],
    }


def _zigzag_certificate(n, G):
    base = build_schreier(n)
    _, _, literal = zigzag_rotation_table(base, c4(), literal_return_label=True)
    degrees = sorted({G.degree(v) for v in G.vertices})
    return {
        "product": G.name,
        "vertices": str(len(G)),
        "degrees": [str(d) for d in degrees],
        "involution": G.is_involution(),
        "literal_return_label_involution": all(literal.get(image) == h for h, image in literal.items()),
        "valid": G.is_involution() and degrees == [4],
    }


def cmd_product(args):
    if args.kind == "grp":
        if args.r is None:
            raise ValueError("--kind grp needs --r")
        G = generalized_replacement(args.n, args.r)
        cert = _replacement_certificate(args.n, args.r, G)
    else:
        G = schreier_zigzag(args.n)
        cert = _zigzag_certificate(args.n, G)
    _write(_serialize_graph(G, args.format), args.output)
    if args.output:
        _write(_dump(cert), args.output + ".cert.json")
    else:
        sys.stderr.write(_dump(cert))
    passed = cert["isomorphic"] if args.kind == "grp" else cert["valid"]
    if not passed:
        raise CheckFailed(f"certificate for {G.name} failed")
    return EXIT_OK


def _order_for(spec_text, G, mode):
    if mode == "preset":
        preset = Constants.vertex_order_preset(parse_graph_spec(spec_text).text)
        if preset is not None:
            return resolve_order(G, preset)
    return resolve_order(G, None)


def _graph_section(spec_text, mode):
    G = build_graph(spec_text)
    order = _order_for(spec_text, G, mode)
    ihara = ihara_reciprocal(G, order)
    section = {
        "graph": spec_text,
        "name": G.name,
        "vertices": str(len(G)),
        "edges": str(G.num_edges),
        "vertex_order": [vertex_label(v) for v in order],
        "adjacency": _matrix_strings(adjacency_matrix(G, order)),
        "ihara_reciprocal": ihara.to_json(),
    }
    try:
        section["oracle_agrees"] = nonbacktracking_reciprocal(G) == ihara
    except CapExceededError as e:
        logger.warning("non-backtracking oracle skipped: %s", e)
        section["oracle_agrees"] = None
    return section


def _apply_presets(c, mode):
    """套用預設葉順序（葉鍵集合相符時）。"""
    if mode != "preset":
        return c
    preset = Constants.SHEET_ORDER_PRESETS.get(len(c.sheet_keys[0]))
    if preset and sorted(preset) == sorted(c.sheet_keys):
        return c.with_sheet_order(preset)
    return c


def _artin_section(cover_text, mode, check_factorization, check_divisibility):
    c = _apply_presets(build_cover(cover_text), mode)
    base_spec = cover_text.split("/", 1)[1]
    order = _order_for(base_spec, c.base, mode)
    mats = artin_matrices(c, order)
    section = {
        "cover": c.cover.name,
        "base": c.base.name,
        "base_order": [vertex_label(v) for v in order],
        "artin_matrices": {g: _matrix_strings(M) for g, M in mats.items()},
        "l_reciprocals": {
            chi.name: artin_reciprocal(c, chi, order).to_json() for chi in characters(deck_group(c))
        },
    }
    if check_factorization:
        section["factorization"] = factorization_check(c)
    if check_divisibility:
        result = divisibility_check(ihara_reciprocal(c.base), ihara_reciprocal(c.cover))
        section["divisibility"] = {
            "divisible": result.divisible,
            "quotient": result.quotient.to_json(),
            "remainder": result.remainder.to_json(),
        }
    return section


def cmd_zeta(args):
    if not args.graph and not args.artin:
        raise ValueError("zeta needs --graph or --artin")
    if (args.check_factorization or args.check_divisibility) and not args.artin:
        raise ValueError("--check-factorization and --check-divisibility need --artin")
    report = {}
    if args.graph:
        report["graph"] = _graph_section(args.graph, args.order)
    if args.artin:
        report["artin"] = _artin_section(args.artin, args.order, args.check_factorization, args.check_divisibility)
    _write(_dump(report), args.output)

    failures = []
    if args.graph and report["graph"]["oracle_agrees"] is False:
        failures.append("non-backtracking oracle disagrees")
    if args.artin:
        if report["artin"].get("factorization") is False:
            failures.append("factorization check failed")
        if "divisibility" in report["artin"] and not report["artin"]["divisibility"]["divisible"]:
            failures.append("divisibility check failed")
    if failures:
        raise CheckFailed("; ".join(failures))
    return EXIT_OK


def _sheet_order(c, choice):
    if choice in ("preset", "lex"):
        return _apply_presets(c, choice)
    return c.with_sheet_order([s.strip() for s in choice.split(",") if s.strip()])


def _cover_summary(c):
    lines = [f"cover: {c.name}", "covering: true", "sheets: " + " ".join(c.sheet_keys)]
    perms = frobenius_permutations(c)
    for name, p in perms.items():
        lines.append(f"frobenius {name}: {cycle_notation(p)}")
    order = monodromy_order(perms.values())
    bound = "" if order.exact else " (lower bound)"
    lines.append(f"monodromy order: {int(order)}{bound}")
    lines.append(f"normal: {str(order.exact and order == c.degree).lower()}")
    return "\n".join(lines) + "\n"


def cmd_cover(args):
    c = _sheet_order(build_cover(args.cover, args.base), args.sheet_order)
    if args.report:
        report = cover_report(c)
        _write(_dump(report))
        if not report["covering"]:
            raise CheckFailed(f"{c.name} is not a covering")
        return EXIT_OK
    if not verify_covering(c):
        raise CheckFailed(f"{c.name} is not a covering")
    _write(_cover_summary(c))
    return EXIT_OK


def cmd_verify_paper(args):
    golden = args.golden or GlobalConfig().get("golden_path")
    frame = run_suite(only=args.only, golden_path=golden)
    with pd.option_context("display.max_colwidth", None, "display.width", 200):
        _write(frame.to_string(index=False) + "\n")
    if args.xlsx:
        # 只給檔名時放在 output_dir
        target = args.xlsx
        if not os.path.dirname(target):
            target = os.path.join(GlobalConfig().get("output_dir", "output"), target)
        path = export_excel(frame, target)
        sys.stderr.write(f"exported {path}\n")
    if not all_passed(frame):
        failed = frame.loc[frame["status"] != "pass", "item"].tolist()
        raise CheckFailed(f"failed items: {failed}")
    return EXIT_OK


# ===== 參數 =====

def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser():
    """建立命令列解析器。"""
    parser = argparse.ArgumentParser(
        prog="zetagraph",
        description="Basilica Schreier graphs, graph products, coverings and Ihara zeta functions",
    )
    parser.add_argument('--log', action='store_true', help='also write logs to logs/YYYY_MM_DD.txt')
    parser.add_argument('--verbose', action='store_true', help='show debug messages on stderr')
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schreier", help="emit the Schreier graph Gamma_n")
    p.add_argument('--level', type=_positive_int, required=True)
    p.add_argument('--format', choices=("dot", "json"), default="json")
    p.add_argument('--output')
    p.set_defaults(func=cmd_schreier)

    p = sub.add_parser("product", help="emit a replacement or zig-zag product with a certificate")
    p.add_argument('--kind', choices=("grp", "zigzag"), required=True)
    p.add_argument('--n', type=_positive_int, required=True)
    p.add_argument('--r', type=_positive_int)
    p.add_argument('--partner', choices=("c4",), default="c4")
    p.add_argument('--format', choices=("dot", "json"), default="json")
    p.add_argument('--output')
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("zeta", help="zeta and L-function reciprocals as a JSON report")
    p.add_argument('--graph', help='graph spec, e.g. gamma:2')
    p.add_argument('--artin', help='cover spec, e.g. gamma:3/gamma:2')
    p.add_argument('--check-factorization', action='store_true')
    p.add_argument('--check-divisibility', action='store_true')
    p.add_argument('--order', choices=("preset", "lex"), default="preset")
    p.add_argument('--output')
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("cover", help="verify a covering and its monodromy")
    p.add_argument('--cover', required=True, help='cover spec, or <cover>/<base>')
    p.add_argument('--base')
    p.add_argument('--sheet-order', default="preset", help='preset, lex, or a comma-separated list of sheets')
    p.add_argument('--report', action='store_true', help='print the full JSON report')
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify-paper", help="reproduce every reference value")
    p.add_argument('--only', help=f"comma-separated groups ({', '.join(GROUPS)}) or item numbers")
    p.add_argument('--golden', help='alternative reference value file')
    p.add_argument('--xlsx', help='also export the summary table to this .xlsx path (bare names go to output_dir)')
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None):
    """
    命令列入口。

    Args:
        argv (list[str], optional): 參數；None 時使用 sys.argv

    Returns:
        int: 結束碼
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    log_filepath = setup_logging(args.log, args.verbose)
    try:
        return args.func(args)
    except CapExceededError as e:
        logger.error("%s", e)
        return EXIT_CAP
    except (GraphError, CoverError, NotDivisibleError, CheckFailed) as e:
        logger.error("%s", e)
        return EXIT_CHECK
    except ValueError as e:
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return EXIT_USAGE
    finally:
        if log_filepath:
            logger.info("exit: %s", datetime.now().strftime('%Y-%m-%d %H:%M:%S'))


if __name__ == "__main__":
    sys.exit(main())
