import csv
import io
from pathlib import Path

from src.workspace import Workspace, WorkspaceError


class ArtifactError(Exception):
    pass


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.6f}"
    if value is None:
        return ""
    return str(value)


class ArtifactRepository:
    def __init__(self, workspace: Workspace, json_provider):
        self.workspace = workspace
        self.json = json_provider

    def render_table(self, header: list[str], rows) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, delimiter="\t", lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ArtifactError(f"Fila de {len(row)} columnas para una cabecera de {len(header)}")
            writer.writerow([format_cell(value) for value in row])
        return buffer.getvalue()

    def write_table(self, name: str, header: list[str], rows) -> Path:
        return self.write_text(name, self.render_table(header, rows))

    def write_json(self, name: str, obj) -> Path:
        return self.write_text(name, self.json.dumps(obj, indent=2) + "\n")

    def write_text(self, name: str, text: str) -> Path:
        try:
            path = self.workspace.get_path(name)
            path.write_text(text, encoding="utf-8")
        except (OSError, WorkspaceError) as err:
            raise ArtifactError(f"No se pudo escribir {name}: {err}")
        return path

    def figure_path(self, name: str) -> Path:
        return self.workspace.get_path(name)
