import logging
import os

from flask import Flask
from flask.logging import default_handler

from dotenv import load_dotenv
from config import *
from src.utils.custom_json_provider import CustomJSONProvider
from src.utils.error_handlers import ElegiaGroup
from src.controllers.transcribe_controller import transcribe_bp
from src.controllers.scan_controller import scan_bp
from src.controllers.features_controller import features_bp
from src.controllers.classify_controller import classify_bp
from src.controllers.outliers_controller import outliers_bp
from src.controllers.cluster_controller import cluster_bp
from src.controllers.temporal_controller import temporal_bp
from src.controllers.report_controller import report_bp

load_dotenv()


def create_app():
    """Application factory function."""
    app = Flask(__name__)

    app.json = CustomJSONProvider(app)

    # Load the configuration
    env = os.getenv("ELEGIA_ENV", "development").lower()

    class_config = {
        "production": ProductionConfig,
        "development": DevelopmentConfig,
        "testing": TestingConfig,
    }.get(env, DevelopmentConfig)

    app.config.from_object(class_config)

    # Los servicios registran en el espacio "src" con el mismo handler que Flask
    package_logger = logging.getLogger("src")
    if default_handler not in package_logger.handlers:
        package_logger.addHandler(default_handler)
    package_logger.setLevel(logging.DEBUG if app.config["DEBUG"] else logging.INFO)

    app.logger.info("Running in %s environment", env)

    # Register commands
    app.register_blueprint(transcribe_bp)
    app.register_blueprint(scan_bp)
    app.register_blueprint(features_bp)
    app.register_blueprint(classify_bp)
    app.register_blueprint(outliers_bp)
    app.register_blueprint(cluster_bp)
    app.register_blueprint(temporal_bp)
    app.register_blueprint(report_bp)

    return app


cli = ElegiaGroup(
    create_app=create_app,
    add_default_commands=False,
    add_version_option=False,
    help="Estilometria de la elegia latina.",
)


if __name__ == "__main__":
    cli()
