'''Plain-text tables for reports.'''

import gemkit.lib.util as util


def genus_lines(table):
    '''A generator returning lines for a genus table.

    table is the return value of genus_table().'''
    fmt = '{:<16} {:>6}'
    yield fmt.format('Permutation', 'Genus')
    for eps, genus in table:
        yield fmt.format(str(eps), f'{genus:,d}')


def pair_count_lines(counts, color_count):
    '''The g_ij matrix, blank on the diagonal.'''
    fmt = '{:>4}' + ' {:>6}' * color_count
    yield fmt.format('', *range(color_count))
    for i in range(color_count):
        row = []
        for j in range(color_count):
            if i == j:
                row.append('')
            else:
                row.append(f'{counts[(min(i, j), max(i, j))]:,d}')
        yield fmt.format(i, *row)


def bounds_lines(bounds):
    '''A generator returning lines for a list of bounds.

    bounds is a list of (name, value, witness, applicable) tuples; witness
    may be None.'''
    fmt = '{:<14} {:>7} {:>8} {:<6}'
    yield fmt.format('Bound', 'Value', 'Witness', 'Holds')
    for name, value, witness, applicable in bounds:
        if not applicable:
            yield fmt.format(name, '-', '-', 'n/a')
            continue
        if witness is None:
            holds, witness = '', '-'
        else:
            holds = 'yes' if witness <= value else 'NO'
            witness = f'{witness:,d}'
        yield fmt.format(name, f'{value:,d}', witness, holds)


def residue_lines(checks):
    '''A generator returning lines for manifold-check residues.

    checks is a list of ResidueCheck records.'''
    fmt = '{:>6} {:>6} {:>7} {:<12} {:<18}'
    yield fmt.format('Colour', 'Index', 'Order', 'Surfaces', 'Certification')
    for check in checks:
        surfaces = 'ok' if check.surfaces_ok else 'BAD'
        yield fmt.format(check.color, check.index, f'{check.order:,d}', surfaces,
                         check.verdict)


def reduction_lines(reduction, elapsed):
    fmt = '{:<10} {:>8} {:>8} {:>10}'
    yield fmt.format('Verdict', 'Order', 'Steps', 'Time')
    yield fmt.format(reduction.verdict, f'{reduction.gem.order:,d}',
                     f'{reduction.steps:,d}', util.formatted_time(elapsed, sep=''))
