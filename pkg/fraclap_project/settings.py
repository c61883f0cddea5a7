"""
Django settings for the fraclap_project project.

The project has no web surface: it hosts the fraclap app, whose management
commands are the command-line interface of the library in src/.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / ".env")


def _optional_float(name):
    value = os.getenv(name, "").strip()
    return float(value) if value else None


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "django-insecure-fraclap-local")

DEBUG = os.getenv("DJANGO_DEBUG", "False") == "True"

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "rest_framework",
    "fraclap",
]

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Django REST Framework settings
REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "UNAUTHENTICATED_USER": None,
}

# Engine settings, overridable from the environment or .env
FRACLAP = {
    # relative tolerance of the quadrature oracle; None keeps the
    # per-dimension defaults (1e-6, 1e-5, 1e-4 for d = 1, 2, 3)
    "QUAD_TOL": _optional_float("FRACLAP_QUAD_TOL"),
    "WORKERS": int(os.getenv("FRACLAP_WORKERS", "1")),
    "LOG_LEVEL": os.getenv("FRACLAP_LOG_LEVEL", "WARNING").upper(),
}

# Results go to stdout, diagnostics to stderr
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": FRACLAP["LOG_LEVEL"],
    },
}
