import logging
from pathlib import Path

logger = logging.getLogger(__name__)


class WorkspaceError(Exception):
    pass


class Workspace:
    def __init__(self, output_dir):
        """Prepara el directorio de salida de la corrida."""
        self.root = Path(output_dir)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as err:
            logger.critical("No se pudo crear %s - %s", self.root, err.strerror)
            raise WorkspaceError(f"Error al preparar el directorio de salida. {err.strerror}")

    def get_path(self, name: str) -> Path:
        path = self.root / name
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
        except OSError as err:
            raise WorkspaceError(f"No se pudo crear {path.parent}. {err.strerror}")
        return path
