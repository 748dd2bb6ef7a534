"""
Unit-тесты для отдельных компонентов
"""

