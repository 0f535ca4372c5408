with open("رسالة.txt", encoding="utf-8") as f:
    content = f.read()
print(content)
