"""
Main script to run the block calculator
Reads one job from the command line, prints a report per V and exits 0/1/2
"""

import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

import config
from blockcalc import direct_sum_reports, verify
from errors import InputError, InternalInconsistencyError
from klengine import block_module_pair, ext_dimensions, kl_table
from report_format import ExtModel, JobSpec, parse_coords, render, render_ext
from rootsys import build_root_system, parse_word
from weightlat import integral_data, require_dominant


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad flags as input errors instead of exiting"""

    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog='blockcalc',
        description='Dimensions of the simple modules of the algebra B_lambda = (End V (x) U_lambda)^g',
    )
    parser.add_argument('--type', dest='type_letter', required=True, help='Cartan type letter A-G')
    parser.add_argument('--rank', type=int, required=True)
    parser.add_argument('--lambda', dest='lambda_coords', required=True,
                        help="comma-separated fundamental coordinates, 'p/q' allowed; "
                             "write --lambda=-1,0 when the first entry is negative")
    parser.add_argument('--v', action='append', default=[], metavar='NU',
                        help='highest weight of V, comma-separated; repeat for a direct sum')
    parser.add_argument('--format', dest='output_format', choices=['table', 'json', 'csv'],
                        default=config.DEFAULT_OUTPUT_FORMAT)
    parser.add_argument('--order-variant', choices=['root', 'dominant'], default=config.DEFAULT_ORDER_VARIANT,
                        help='order used for the minimal column')
    parser.add_argument('--fast-path', action='store_true',
                        help='skip the KL engine when lambda is in general position')
    parser.add_argument('--kl-dump', default=config.KL_DUMP_PATH, metavar='PATH',
                        help='write the memoized KL table here (default: KL_DUMP_PATH)')
    parser.add_argument('--ext', nargs=2, metavar=('X', 'Y'),
                        help="graded Ext dimensions for words X, Y in the generators of W_lambda ('e', '1.2.1')")
    return parser


def parse_job(argv: Optional[List[str]] = None) -> JobSpec:
    options = build_parser().parse_args(argv)
    v_weights = []
    for text in options.v:
        try:
            v_weights.append([int(c) for c in text.split(',') if c.strip()])
        except ValueError:
            raise InputError(f"V highest weight '{text}' must be integers")
    try:
        lambda_coords = parse_coords(options.lambda_coords)
    except ValueError as e:
        raise InputError(str(e))
    return JobSpec(
        type_letter=options.type_letter,
        rank=options.rank,
        lambda_coords=lambda_coords,
        v_highest_weights=v_weights,
        output_format=options.output_format,
        order_variant=options.order_variant,
        fast_path=options.fast_path,
        kl_dump=options.kl_dump,
        ext=tuple(options.ext) if options.ext else None,
    )


def _ext(job: JobSpec, rs) -> str:
    lam = job.lam
    group = integral_data(rs, lam).group
    x = group.element_from_word(parse_word(job.ext[0]))
    y = group.element_from_word(parse_word(job.ext[1]))
    dims = ext_dimensions(rs, lam, x, y)
    mu, nu = block_module_pair(rs, lam, x, y)
    model = ExtModel(
        type=rs.type_letter, rank=rs.rank, lambda_=lam.to_strings(),
        x=x.word_string(), y=y.word_string(),
        mu=mu.to_strings(), nu=nu.to_strings(), dims=dims,
    )
    return render_ext(model, job.output_format)


def run(argv: Optional[List[str]] = None) -> int:
    """Run one job; the return value is the process exit code"""
    try:
        job = parse_job(argv)
        rs = build_root_system(job.type_letter, job.rank)
        lam = job.lam
        require_dominant(rs, lam)
        config.status(f"✓ lambda = {lam} is dominant for {rs.name}")

        if job.ext is not None:
            output = _ext(job, rs)
        else:
            reports = direct_sum_reports(rs, lam, job.v_weights, job.order_variant, job.fast_path)
            for report in reports:
                verify(report)
            output = render(reports, job.output_format)

        if job.kl_dump:
            try:
                kl_table(integral_data(rs, lam).group).dump(job.kl_dump)
            except OSError as e:
                raise InputError(f"cannot write KL table to {job.kl_dump}: {e.strerror or e}")

        print(output)
        return 0

    except (InputError, ValidationError) as e:
        print(f"❌ Input error: {e}", file=sys.stderr)
        return 1
    except InternalInconsistencyError as e:
        print(f"❌ Internal inconsistency: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
