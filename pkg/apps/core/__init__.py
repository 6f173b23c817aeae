# Core app