"""
Тесты для ветвей Кулона
"""
