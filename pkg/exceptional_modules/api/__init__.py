# API包初始化文件
