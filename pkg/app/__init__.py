# Пустой файл - делает app пакетом