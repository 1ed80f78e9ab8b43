from . import forms, groups, hgroup, ideals
