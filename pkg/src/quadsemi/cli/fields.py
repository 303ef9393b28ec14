"""Single-field queries: expansion, classification, listings, counts and audits."""
import time
from typing import Optional

import typer
from tabulate import tabulate

from quadsemi.cli.common import (
    EXIT_CHECK_FAILED,
    EXIT_NOT_TOTALLY_POSITIVE,
    EXIT_USAGE,
    emit,
    exit_codes,
    fail,
    get_options,
    key_value_table,
    load_field,
    pass_fail,
)
from quadsemi.contfrac import fundamental_unit, sigma_expand, totally_positive_unit
from quadsemi.decomposition import (
    UDClause,
    classify_ud,
    count_ud_mod_units,
    enumerate_decompositions,
    two_decompositions,
    ud_representatives,
)
from quadsemi.field import Embedding, FieldContext, QuadInt, compare_embedding
from quadsemi.helpers.formatting import element_json, format_element, to_ms
from quadsemi.norms import (
    audit_bounds,
    audit_indecomposable_norms,
    audit_ud_norms,
    bounds_check,
    convergent_norms_check,
    norm_recurrence_check,
    ud_norm_bound,
)
from quadsemi.semigroup import beta, beta_coords, canonicalize, is_indecomposable


def field_summary(ctx: FieldContext) -> dict:
    """Return the continued fraction data and units of a field."""
    expansion = sigma_expand(ctx)
    epsilon = fundamental_unit(ctx)
    return {
        'D': ctx.D,
        'delta': ctx.delta,
        'u': list(expansion.u),
        's': expansion.s,
        's_plus': expansion.s_plus,
        'palindromic': expansion.is_palindromic,
        'epsilon': element_json(epsilon),
        'epsilon_norm': epsilon.norm(),
        'epsilon_plus': element_json(totally_positive_unit(ctx)),
    }


def cf(ctx: typer.Context, d: int = typer.Argument(..., help='A squarefree integer >= 2.')) -> None:
    """Print the period of sigma_D and the fundamental units."""
    D = d  # click lowercases argument names
    options = get_options(ctx)
    field = load_field(D)
    with exit_codes():
        data = field_summary(field)

    def render(d: dict) -> str:
        return key_value_table([
            ('D', d['D']),
            ('period', ' '.join(str(u) for u in d['u'])),
            ('s', f"{d['s']} ({'even' if d['s'] % 2 == 0 else 'odd'})"),
            ('palindromic', d['palindromic']),
            ('epsilon', f"{d['epsilon']['text']} (norm {d['epsilon_norm']})"),
            ('epsilon+', d['epsilon_plus']['text']),
        ])

    emit(options, data, render)


def _decomposition_texts(decompositions) -> list[str]:
    return [' + '.join(format_element(p) for p in d.parts) for d in decompositions]


def _bounds_data(field: FieldContext, x: QuadInt) -> dict:
    """Evaluate the norm bounds for x, through its conjugate when needed."""
    form = canonicalize(field, x)
    if form.j0 < 0:
        form = canonicalize(field, x.conjugate())
    coords = beta_coords(field, form.j0)
    report = bounds_check(field, coords.i, coords.r, form.e, form.f)
    return {
        'i': coords.i,
        'r': coords.r,
        'upper1': report.upper1_holds,
        'upper2': report.upper2_holds,
        'upper2_strict': report.upper2_strict_holds,
        'lower': {check.case.value: check.holds for check in report.lower_checks},
        'ok': report.ok,
    }


def classify(ctx: typer.Context,
             d: int = typer.Argument(..., help='A squarefree integer >= 2.'),
             a: int = typer.Argument(..., help='The coefficient of 1.'),
             b: int = typer.Argument(..., help='The coefficient of omega_D.')) -> None:
    """Classify the element a + b*omega_D.

    Negative coefficients may be given directly, as in `classify 2 3 -1`.
    """
    D = d  # click lowercases argument names
    options = get_options(ctx)
    field = load_field(D)
    x = field.element(a, b)
    data: dict = {'D': D, 'element': element_json(x)}

    if not x.is_totally_positive():
        data['totally_positive'] = False
        data['signs'] = [x.sign(Embedding.FIRST), x.sign(Embedding.SECOND)]
        emit(options, data, lambda d: key_value_table([
            ('element', d['element']['text']),
            ('totally positive', False),
            ('signs', ' '.join(f'{s:+d}' for s in d['signs'])),
        ]))
        fail(f'{format_element(x)} is not totally positive', EXIT_NOT_TOTALLY_POSITIVE)

    with exit_codes():
        form = canonicalize(field, x)
        ud = classify_ud(field, x)
        witnesses = two_decompositions(field, x)
        bounds = _bounds_data(field, x)
        cap = ud_norm_bound(field)

    norm = x.norm()
    is_ud = ud.tag is not UDClause.NOT_UD
    data.update({
        'totally_positive': True,
        'norm': norm,
        'trace': x.trace(),
        'canonical': {'j0': form.j0, 'e': form.e, 'f': form.f},
        'indecomposable': is_indecomposable(field, x),
        'uniquely_decomposable': is_ud,
        'clause': ud.base_tag.value,
        'conjugated': ud.tag is UDClause.CONJUGATE_OF,
        'class': str(ud),
        'decompositions': [] if witnesses is None else _decomposition_texts(witnesses),
        'bounds': bounds,
        'ud_norm_cap': {'floor': cap.floor, 'holds': (not is_ud) or norm < cap.value},
    })

    def render(d: dict) -> str:
        canonical = d['canonical']
        rows = [
            ('element', f"{d['element']['text']} = {d['element']['a']} + {d['element']['b']}w"),
            ('norm', d['norm']),
            ('trace', d['trace']),
            ('canonical', f"j0={canonical['j0']} e={canonical['e']} f={canonical['f']}"),
            ('indecomposable', d['indecomposable']),
            ('uniquely decomposable', d['uniquely_decomposable']),
            ('class', d['class']),
        ]
        rows += [(f'decomposition {k + 1}', text) for k, text in enumerate(d['decompositions'])]
        rows.append(('norm bounds', pass_fail(d['bounds']['ok'])))
        return key_value_table(rows)

    emit(options, data, render)
    if not bounds['ok'] or not data['ud_norm_cap']['holds']:
        fail('a norm bound does not hold', EXIT_CHECK_FAILED)


def _indecomposable_row(field: FieldContext, j: int) -> dict:
    element = beta(field, j)
    coords = beta_coords(field, j)
    return {
        'j': j,
        'i': coords.i,
        'r': coords.r,
        'conjugated': coords.conjugated,
        'element': element_json(element),
        'norm': element.norm(),
    }


def indecomposables(ctx: typer.Context,
                    d: int = typer.Argument(..., help='A squarefree integer >= 2.'),
                    count: Optional[int] = typer.Option(None, '--count', '-n',
                                                        help='List beta_0, ..., beta_{n-1}.'),
                    max_trace: Optional[int] = typer.Option(None, '--max-trace', '-t',
                                                            help='List every beta_j, j >= 0, '
                                                                 'with trace <= T.'),
                    with_conjugates: bool = typer.Option(False, '--with-conjugates',
                                                         help='Also list beta_j for j < 0.')
                    ) -> None:
    """List indecomposable elements in increasing order."""
    D = d  # click lowercases argument names
    options = get_options(ctx)
    if (count is None) == (max_trace is None):
        fail('give exactly one of --count and --max-trace', EXIT_USAGE)
    if (count is not None and count < 1) or (max_trace is not None and max_trace < 2):
        fail('--count must be at least 1 and --max-trace at least 2', EXIT_USAGE)
    field = load_field(D)

    with exit_codes():
        if count is not None:
            indices = list(range(count))
        else:
            indices = []
            j = 0
            while compare_embedding(beta(field, j), max_trace) <= 0:
                if beta(field, j).trace() <= max_trace:
                    indices.append(j)
                j += 1
        if with_conjugates:
            indices = sorted({-j for j in indices} | set(indices))
        rows = [_indecomposable_row(field, j) for j in indices]

    data = {'D': D, 'indecomposables': rows}
    emit(options, data, lambda d: tabulate(
        [(row['j'], row['i'], row['r'], row['element']['a'], row['element']['b'],
          row['element']['text'], row['norm']) for row in d['indecomposables']],
        headers=['J', 'I', 'R', 'A', 'B', 'ELEMENT', 'NORM'],
        tablefmt='plain'))


def count_ud(ctx: typer.Context,
             d: int = typer.Argument(..., help='A squarefree integer >= 2.'),
             verify_brute: bool = typer.Option(False, '--verify-brute',
                                               help='Also enumerate the representatives '
                                                    'and check each by brute force.')) -> None:
    """Count the uniquely decomposable elements modulo totally positive units."""
    D = d  # click lowercases argument names
    options = get_options(ctx)
    field = load_field(D)
    with exit_codes():
        data: dict = {'D': D, 'count': count_ud_mod_units(field)}
        if verify_brute:
            start = time.perf_counter()
            representatives = ud_representatives(field)
            unique = sum(1 for x in representatives
                         if len(enumerate_decompositions(field, x, 2)) == 1)
            data['enumerated'] = len(representatives)
            data['match'] = unique == len(representatives) == data['count']
            if options.timings:
                data['timings_ms'] = {'verify': to_ms(time.perf_counter() - start)}

    def render(d: dict) -> str:
        rows = [('count', d['count'])]
        if 'match' in d:
            rows += [('enumerated', d['enumerated']), ('match', d['match'])]
        return key_value_table(rows)

    emit(options, data, render)
    if not data.get('match', True):
        fail(f"closed form gives {data['count']} but enumeration gives {data['enumerated']}",
             EXIT_CHECK_FAILED)


def norm_audit_data(field: FieldContext, max_ef: int, max_i: int) -> dict:
    """Run every norm check on one field and return pass/fail per family."""
    failures = audit_bounds(field, max_i, max_ef)
    families = {
        'upper1': all(r.upper1_holds for r in failures),
        'upper2': all(r.upper2_holds for r in failures),
        'lower': all(r.lower_holds for r in failures),
        'recurrence': bool(norm_recurrence_check(field, max_i)),
        'convergent_norms': convergent_norms_check(field, max_i),
        'indecomposable_norms': audit_indecomposable_norms(field),
        'ud_norm_cap': audit_ud_norms(field),
    }
    return {
        'D': field.D,
        'max_ef': max_ef,
        'max_i': max_i,
        'violations': len(failures),
        'checks': {name: pass_fail(ok) for name, ok in families.items()},
        'ok': all(families.values()),
    }


def norm_audit(ctx: typer.Context,
               d: int = typer.Argument(..., help='A squarefree integer >= 2.'),
               max_ef: int = typer.Option(10, '--max-ef', help='Bound on e + f.'),
               max_i: int = typer.Option(9, '--max-i', help='Largest block index.')) -> None:
    """Audit the norm identities and bounds on a grid of elements."""
    D = d  # click lowercases argument names
    options = get_options(ctx)
    if max_ef < 1 or max_i < 1:
        fail('--max-ef and --max-i must be positive', EXIT_USAGE)
    field = load_field(D)
    with exit_codes():
        data = norm_audit_data(field, max_ef, max_i)

    emit(options, data, lambda d: key_value_table(
        [(name, result) for name, result in d['checks'].items()]
        + [('violations', d['violations'])]))
    if not data['ok']:
        fail(f"{data['violations']} norm bound violations", EXIT_CHECK_FAILED)
