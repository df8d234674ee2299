"""Command line front end.

Subcommands: count, sweep, rank, dim, identities.  Exit status 0 on
success, 2 when counting methods disagree, 1 on usage errors.
The default enumeration cap can be set with ARTIN_SCHREIER_CAP.
"""

import argparse
import csv
import io
import json
import os
import sys

from .gf import prime_field, extension, parse_element, element_to_json, EnumerationCapError, FieldMismatch
from .polyring import LinearizedPoly
from .circulant import CirculantMatrix, rank_report
from .qform import diagonalize, gram_matrix, radical_dim_poly, radical_dim_closed, RadicalHypothesisWarning
from .curves import CurveSpec, verify, sweep, sweep_grid, DEFAULT_CAP
from .identities import run_all, BATCHES

CAP_ENV = 'ARTIN_SCHREIER_CAP'


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f'{self.prog}: error: {message}\n')


def default_cap():
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f'{CAP_ENV} must be an integer, got {raw!r}')


def _json_value(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f'{what}: not valid bracketed syntax: {text!r}')


def _int_list(text, what):
    try:
        return [int(t) for t in text.split(',') if t.strip()]
    except ValueError:
        raise UsageError(f'{what}: expected comma-separated integers, got {text!r}')


def build_base(args):
    try:
        Fp = prime_field(args.p)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.base_modulus is None:
        return Fp if args.e == 1 else extension(Fp, args.e)
    mod = _json_value(args.base_modulus, '--base-modulus')
    if not isinstance(mod, list) or not all(isinstance(c, int) for c in mod):
        raise UsageError('--base-modulus must be a list of integers, constant term first')
    if args.e_given and args.e != len(mod) - 1:
        raise UsageError(f'--e {args.e} conflicts with a degree-{len(mod) - 1} --base-modulus')
    try:
        return extension(Fp, modulus=[c % args.p for c in mod])
    except ValueError as exc:
        raise UsageError(f'--base-modulus: {exc}')


def _parse_elem(F, text, what):
    try:
        return parse_element(F, _json_value(text, what))
    except ValueError as exc:
        raise UsageError(f'{what}: {exc}')


def build_spec(args):
    F = build_base(args)
    if args.r is None or args.r < 2:
        raise UsageError('--r must be at least 2')
    if (args.P is None) == (args.i is None):
        raise UsageError('give exactly one of --P and --i')
    if args.i is not None:
        if not 0 < args.i < args.r:
            raise UsageError(f'--i must satisfy 0 < i < r, got {args.i}')
        P = LinearizedPoly.x_qi_minus_x(F, args.i)
    else:
        coeffs = _json_value(args.P, '--P')
        if not isinstance(coeffs, list) or not coeffs:
            raise UsageError('--P must be a nonempty list of coefficients')
        try:
            P = LinearizedPoly(F, [parse_element(F, c) for c in coeffs])
        except ValueError as exc:
            raise UsageError(f'--P: {exc}')
    lam = _parse_elem(F, args.lam, '--lambda')
    ext = None
    if args.ext_modulus is not None:
        mod = _json_value(args.ext_modulus, '--ext-modulus')
        try:
            ext = tuple(parse_element(F, c).raw for c in mod)
            extension(F, modulus=ext)
        except ValueError as exc:
            raise UsageError(f'--ext-modulus: {exc}')
        if len(ext) - 1 != args.r:
            raise UsageError('--ext-modulus degree must equal r')
    try:
        return CurveSpec(F, args.r, P, lam, ext)
    except ValueError as exc:
        raise UsageError(str(exc))


def _methods(text):
    names = [m.strip() for m in text.split(',') if m.strip()]
    allowed = {'brute', 'pipeline', 'formula', 'all', 'formula_general', 'formula_xqi', 'formula_i1'}
    bad = [m for m in names if m not in allowed]
    if bad or not names:
        raise UsageError(f'--method: unknown {bad or text!r}')
    return names


def _emit(obj, fmt, out, rows=None, text=None):
    if fmt == 'json':
        out.write(json.dumps(obj, indent=2) + '\n')
    elif fmt == 'csv':
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        for row in rows:
            writer.writerow(row)
        out.write(buf.getvalue())
    else:
        out.write(text + '\n')


def _report_rows(reports, header=True):
    rows = [['q', 'r', 'i', 'lambda', 'method', 'points', 'N', 'as_printed']] if header else []
    for rep in reports:
        s = rep.spec
        for m in rep.methods:
            printed = m.intermediates.get('as_printed', '')
            rows.append([s.q, s.r, '' if s.i is None else s.i, json.dumps(element_to_json(s.lam)),
                         m.name, m.points, m.N, '' if printed is None else printed])
    return rows


def _report_text(rep):
    s = rep.spec
    lines = [f'curve over F_{s.q}^{s.r}, P = {s.P!r}, lambda = {s.lam}']
    for m in rep.methods:
        lines.append(f'  {m.name:16s} #C = {m.points}   N = {m.N}')
    for name, why in rep.skipped.items():
        lines.append(f'  {name:16s} skipped: {why}')
    lines.append(f'  agreement: {"yes" if rep.agreement else "NO"}')
    for d in rep.deviations:
        lines.append(f'  deviation {d["method"]}: published {d["expected_from_paper"]}, oracle {d["oracle_value"]}')
    return '\n'.join(lines)


def cmd_count(args, out):
    spec = build_spec(args)
    methods = _methods(args.method)
    cap = args.cap if args.cap is not None else default_cap()
    if methods == ['brute'] and spec.q**spec.r > cap:
        raise UsageError(f'q^r = {spec.q**spec.r} exceeds the enumeration cap {cap}')
    rep = verify(spec, methods, cap=cap, workers=args.workers)
    if not rep.methods:
        raise UsageError('no requested method could run: ' + '; '.join(f'{k}: {v}' for k, v in rep.skipped.items()))
    _emit(rep.to_json(), args.format, out, rows=_report_rows([rep]), text=_report_text(rep))
    return 0 if rep.agreement else 2


def cmd_sweep(args, out):
    ps = _int_list(args.p, '--p')
    es = _int_list(args.e, '--e')
    if args.rmax < args.rmin or args.rmax < 2:
        raise UsageError('empty grid: need rmax >= max(rmin, 2)')
    cap = args.cap if args.cap is not None else default_cap()
    try:
        specs = list(sweep_grid(ps, es, max(args.rmin, 2), args.rmax, cap))
    except ValueError as exc:
        raise UsageError(str(exc))
    if not specs:
        raise UsageError('empty grid under the given cap')
    res = sweep(specs, _methods(args.method), cap=cap, workers=args.workers)
    obj = res.to_json()
    if not args.timings:
        obj.pop('timings')
    lines = [f'{len(res.reports)} grid points, {res.mismatches} mismatches',
             f'{len(res.deviations)} published values differ from the oracle']
    if args.as_printed:
        for d in res.deviations:
            lines.append(f'  q={d["q"]} r={d["r"]} i={d["i"]} lambda={d["lambda"]} {d["method"]}: '
                         f'published {d["expected_from_paper"]}, oracle {d["oracle_value"]}')
    for k, v in sorted(res.timings.items()):
        lines.append(f'  time {k}: {v:.2f} s')
    _emit(obj, args.format, out, rows=_report_rows(res.reports), text='\n'.join(lines))
    return 0 if res.mismatches == 0 else 2


def cmd_rank(args, out):
    F = build_base(args)
    gen = _json_value(args.generator, '--generator')
    if not isinstance(gen, list) or not gen:
        raise UsageError('--generator must be a nonempty list')
    try:
        C = CirculantMatrix(F, [parse_element(F, c) for c in gen])
    except ValueError as exc:
        raise UsageError(f'--generator: {exc}')
    rep = rank_report(C)
    rows = [list(rep.keys()), [json.dumps(v) if isinstance(v, list) else v for v in rep.values()]]
    text = '\n'.join(f'{k}: {json.dumps(v)}' for k, v in rep.items())
    _emit(rep, args.format, out, rows=rows, text=text)
    return 0


def cmd_dim(args, out):
    args.lam = '0'
    spec = build_spec(args)
    with_warning = []
    import warnings
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always', RadicalHypothesisWarning)
        poly = radical_dim_poly(spec.P, spec.r)
        with_warning = [str(w.message) for w in caught if issubclass(w.category, RadicalHypothesisWarning)]
    elim = diagonalize(gram_matrix(spec.P, spec.r)).v
    rep = {'p': spec.p, 'q': spec.q, 'r': spec.r, 'i': spec.i,
           'poly': poly, 'closed': radical_dim_closed(spec.i, spec.r, spec.p) if spec.i else None,
           'elimination': elim, 'warnings': with_warning}
    values = [v for v in (rep['poly'], rep['closed'], rep['elimination']) if v is not None]
    rep['agreement'] = len(set(values)) == 1
    rows = [list(rep.keys()), [json.dumps(v) if isinstance(v, list) else v for v in rep.values()]]
    text = '\n'.join(f'{k}: {v}' for k, v in rep.items())
    _emit(rep, args.format, out, rows=rows, text=text)
    return 0 if rep['agreement'] else 2


def cmd_identities(args, out):
    names = None
    if args.batch:
        names = [b.strip() for b in args.batch.split(',')]
        bad = [b for b in names if b not in BATCHES]
        if bad:
            raise UsageError(f'--batch: unknown {bad}')
    results = run_all(n=args.n, seed=args.seed, names=names)
    obj = {'seed': args.seed, 'batches': [r.to_json() for r in results]}
    rows = [['name', 'instances', 'failures']] + [[r.name, r.instances, len(r.failures)] for r in results]
    text = '\n'.join(f'{r.name:14s} {r.instances} instances, {len(r.failures)} failures' for r in results)
    _emit(obj, args.format, out, rows=rows, text=text)
    return 0 if all(r.passed for r in results) else 2


def _field_args(p, with_e=True):
    p.add_argument('--p', type=int, required=True, help='characteristic (odd prime)')
    if with_e:
        p.add_argument('--e', type=int, default=None, help='degree of F_q over F_p (default 1)')
    p.add_argument('--base-modulus', default=None, help='monic modulus of F_q over F_p, constant first')


def _curve_args(p):
    _field_args(p)
    p.add_argument('--r', type=int, required=True, help='extension degree')
    p.add_argument('--ext-modulus', default=None, help='monic modulus of F_{q^r} over F_q')
    p.add_argument('--P', default=None, help='coefficients a_0..a_l of P = sum a_j x^(q^j)')
    p.add_argument('--i', type=int, default=None, help='shortcut for P = x^(q^i) - x')


def _output_args(p):
    p.add_argument('--format', choices=('json', 'csv', 'text'), default='json')


def make_parser():
    parser = Parser(prog='artin-schreier', description='Point counts for y^q - y = x P(x) - lambda.')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=Parser)

    p = sub.add_parser('count', help='count points of one curve')
    _curve_args(p)
    p.add_argument('--lambda', dest='lam', default='0', help='lambda in F_q (bracketed syntax)')
    p.add_argument('--method', default='all', help='brute, pipeline, formula, all (comma list)')
    p.add_argument('--cap', type=int, default=None, help='enumeration cap (field elements)')
    p.add_argument('--workers', type=int, default=1)
    _output_args(p)

    p = sub.add_parser('sweep', help='verify every method over a grid of x^(q^i) - x curves')
    p.add_argument('--p', default='3,5,7')
    p.add_argument('--e', default='1,2')
    p.add_argument('--rmin', type=int, default=2)
    p.add_argument('--rmax', type=int, default=10)
    p.add_argument('--cap', type=int, default=None)
    p.add_argument('--method', default='all')
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--as-printed', action='store_true', help='also list each published value that differs, in text output')
    p.add_argument('--timings', action='store_true', help='include timings in json output')
    _output_args(p)

    p = sub.add_parser('rank', help='rank report for a circulant matrix')
    _field_args(p)
    p.add_argument('--generator', required=True, help='generator vector a_0..a_{r-1}')
    _output_args(p)

    p = sub.add_parser('dim', help='radical dimension of Tr(x P(x)) three ways')
    _curve_args(p)
    _output_args(p)

    p = sub.add_parser('identities', help='seeded checks of the symmetric-function identities')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--n', type=int, default=1000, help='instances per batch')
    p.add_argument('--batch', default=None, help='comma list of ' + ', '.join(BATCHES))
    _output_args(p)
    return parser


COMMANDS = {'count': cmd_count, 'sweep': cmd_sweep, 'rank': cmd_rank, 'dim': cmd_dim, 'identities': cmd_identities}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = make_parser()
    args = parser.parse_args(argv)
    if hasattr(args, 'e') and args.command in ('count', 'rank', 'dim'):
        args.e_given = args.e is not None
        if args.e is None:
            args.e = 1
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, EnumerationCapError, FieldMismatch) as exc:
        print(f'artin-schreier: error: {exc}', file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
