"""quadsemi command-line interface."""
import logging

import typer

import quadsemi.cli.fields as fields_cli
import quadsemi.cli.reconstruct as reconstruct_cli
import quadsemi.cli.reports as reports_cli
import quadsemi.cli.sweep as sweep_cli
from quadsemi.cli.common import CliOptions

app = typer.Typer(help='Totally positive integers of real quadratic fields.')
app.add_typer(reports_cli.app, name='reports', help='Browse and delete stored sweep reports.')

app.command('cf')(fields_cli.cf)
app.command('classify',
            context_settings={'ignore_unknown_options': True})(fields_cli.classify)
app.command('indecomposables')(fields_cli.indecomposables)
app.command('count-ud')(fields_cli.count_ud)
app.command('norm-audit')(fields_cli.norm_audit)
app.command('reconstruct')(reconstruct_cli.reconstruct)
app.command('sweep')(sweep_cli.sweep)


@app.callback()
def main(ctx: typer.Context,
         json_output: bool = typer.Option(False, '--json', help='Print JSON instead of text.'),
         no_timings: bool = typer.Option(False, '--no-timings',
                                         help='Leave timings out of the output.'),
         verbose: bool = typer.Option(False, '--verbose', '-v',
                                      help='Log debug messages.')) -> None:
    """Entrypoint for the CLI."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    ctx.obj = CliOptions(json=json_output, timings=not no_timings)
