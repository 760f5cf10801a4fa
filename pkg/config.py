from dotenv import load_dotenv
import os

load_dotenv()


class Config:
    """Base configuration."""

    TESTING = False
    DEBUG = True
    CORPUS_MANIFEST = os.getenv("ELEGIA_CORPUS")
    OUTPUT_DIR = os.getenv("ELEGIA_OUTPUT_DIR", "output")
    SEED = int(os.getenv("ELEGIA_SEED", "42"))
    LEXICON = os.getenv("ELEGIA_LEXICON")
    RHYME_WEIGHTS = os.getenv("ELEGIA_RHYME_WEIGHTS")

    MIN_LINES = int(os.getenv("ELEGIA_MIN_LINES", "20"))  # umbral conservador de longitud
    LSA_DIMS = 50
    NGRAM_SIZES = (2, 3, 4)
    NGRAM_MIN_DF = 2
    TRIALS = 100
    TEST_FRACTION = 0.2
    CONFIDENCE = 0.99
    BCT_SUBSETS = 500
    BCT_SUBSET_SIZE = 15
    BCT_NEIGHBOURS = 3
    BCT_THRESHOLD = 0.05
    PERPLEXITY_LSA = 10.0
    PERPLEXITY_POETIC = 12.0
    THRESHOLDS = (0, 20, 40, 60, 80, 100)


class ProductionConfig(Config):
    """Production configuration."""

    DEBUG = False


class DevelopmentConfig(Config):
    """Development configuration."""


class TestingConfig(Config):
    """Testing configuration."""

    CORPUS_MANIFEST = os.getenv("TEST_ELEGIA_CORPUS")
    OUTPUT_DIR = os.getenv("TEST_ELEGIA_OUTPUT_DIR", "output-test")
    TRIALS = 10
    TESTING = True
