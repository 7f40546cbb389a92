import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'zetaforms_project.settings')
django.setup()
