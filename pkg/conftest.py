import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "fraclap_project.settings")
django.setup()
