"""
Pytest configuration for Django tests
"""
import os

import django
from hypothesis import settings

settings.register_profile('dev', max_examples=40, deadline=None)
settings.register_profile('ci', max_examples=10, deadline=None)
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'dev'))


def pytest_configure():
    """Configure Django settings for pytest"""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'tests.settings')
    django.setup()
