from . import export, sql
