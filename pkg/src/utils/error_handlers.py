import click
from flask.cli import FlaskGroup

USAGE_EXIT = 1
DATA_EXIT = 2


class DataError(click.ClickException):
    """Error en los datos de entrada (corpus, lexico, parametros imposibles)."""

    exit_code = DATA_EXIT

    def show(self, file=None):
        click.echo(f"Error de datos: {self.format_message()}", file=file, err=True)


class ElegiaGroup(FlaskGroup):
    """Grupo de comandos; los errores de uso terminan con codigo 1."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = USAGE_EXIT
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = USAGE_EXIT
            raise
