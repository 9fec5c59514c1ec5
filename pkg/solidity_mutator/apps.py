from django.apps import AppConfig


class SolidityMutatorConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'solidity_mutator'
    verbose_name = 'Solidity Mutator'
