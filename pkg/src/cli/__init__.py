"""
Командная строка: разбор файлов теорий, вызов сервисов, вывод текста или JSON
"""
